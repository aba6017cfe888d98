import type { SessionBody, SessionState, Vec3 } from "./types.js";

export interface CameraPose {
  position: Vec3;
  yaw: number;
  pitch: number;
}

export type Dialog =
  | { kind: "confirm-submit"; text: string }
  | { kind: "pass"; text: string }
  | { kind: "fail"; text: string }
  | { kind: "finished"; text: string }
  | { kind: "locked-gate"; pointId: string; text: string }
  | { kind: "panel"; exhibitId: string; title: string; text: string }
  | { kind: "error"; text: string };

/** Client mirror of the server session plus purely local view state.
 * The server is authoritative: gates, phase, and placements are only
 * ever taken from a server response, never predicted. */
export interface ClientState {
  session: SessionState | null;
  sceneVersion: string | null;
  camera: CameraPose;
  hover: string | null;
  pendingRequests: number;
  dialog: Dialog | null;
  banner: string | null;
  needsReload: boolean;
}

export function initialState(): ClientState {
  return {
    session: null,
    sceneVersion: null,
    camera: { position: [0, 1.6, 0], yaw: 0, pitch: 0 },
    hover: null,
    pendingRequests: 0,
    dialog: null,
    banner: null,
    needsReload: false,
  };
}

/** Adopt a server response wholesale. A scene version change mid-session
 * means our cached scene document is stale: flag for reload. */
export function applyServer(cs: ClientState, body: SessionBody): ClientState {
  const stale = cs.sceneVersion !== null && cs.sceneVersion !== body.scene_version;
  const p = body.state.player_position;
  return {
    ...cs,
    session: body.state,
    sceneVersion: body.scene_version,
    camera: { ...cs.camera, position: [p[0], p[1] + 1.6, p[2]] },
    needsReload: cs.needsReload || stale,
  };
}

export function gateOpen(cs: ClientState, pointId: string): boolean {
  return cs.session !== null && cs.session.gates_open.includes(pointId);
}

export function setHover(cs: ClientState, target: string | null): ClientState {
  return cs.hover === target ? cs : { ...cs, hover: target };
}

export function withDialog(cs: ClientState, dialog: Dialog | null): ClientState {
  return { ...cs, dialog };
}

export function withBanner(cs: ClientState, banner: string | null): ClientState {
  return { ...cs, banner };
}

export function beginRequest(cs: ClientState): ClientState {
  return { ...cs, pendingRequests: cs.pendingRequests + 1 };
}

export function endRequest(cs: ClientState): ClientState {
  return { ...cs, pendingRequests: Math.max(0, cs.pendingRequests - 1) };
}
