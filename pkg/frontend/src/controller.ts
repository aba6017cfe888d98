import { ApiRequestError, GatewayClient, NetworkError } from "./api.js";
import type { Action } from "./api.js";
import {
  applyServer,
  beginRequest,
  endRequest,
  gateOpen,
  initialState,
  setHover,
  withBanner,
  withDialog,
} from "./state.js";
import type { ClientState } from "./state.js";
import type { Pose, Quat, SceneDoc, SubmitBody } from "./types.js";

export const PASS_TEXT = "Pass! The next level is now open.";
export const FAIL_TEXT = "Not pass. Please correct your answer and submit again.";
export const FINISHED_TEXT = "All three levels cleared. Congratulations!";
export const LOCKED_TEXT = "This gate is locked. Pass the current level to open it.";
export const CONFIRM_TEXT = "Submit your answer?";

type Listener = (cs: ClientState) => void;

/** Drives the gateway API and owns the ClientState. All server calls go
 * through a single promise queue so per-session ordering is preserved
 * even though the network is asynchronous. */
export class Controller {
  state: ClientState = initialState();

  private queue: Promise<void> = Promise.resolve();
  private listeners: Listener[] = [];

  constructor(
    private readonly client: GatewayClient,
    readonly scene: SceneDoc,
  ) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private set(cs: ClientState): void {
    this.state = cs;
    for (const l of this.listeners) l(cs);
  }

  /** Serialize an async step behind every previously queued step. */
  private enqueue<T>(step: () => Promise<T>): Promise<T> {
    const run = this.queue.then(step);
    this.queue = run.then(
      () => undefined,
      () => undefined,
    );
    return run;
  }

  start(sessionId?: string): Promise<void> {
    return this.enqueue(async () => {
      this.set(beginRequest(this.state));
      try {
        const body = await this.client.createSession(sessionId);
        this.set(applyServer(endRequest(this.state), body));
      } catch (exc) {
        this.set(endRequest(this.state));
        this.fail(exc);
      }
    });
  }

  /** Hover is purely local: only sets the highlight, no server call. */
  hover(target: string | null): void {
    this.set(setHover(this.state, target));
  }

  teleport(pointId: string): Promise<void> {
    const point = this.scene.teleport.points.find((p) => p.id === pointId);
    if (point && point.kind === "NextLevel" && !gateOpen(this.state, pointId)) {
      // locked per the authoritative server state: dialog, no request
      this.set(withDialog(this.state, { kind: "locked-gate", pointId, text: LOCKED_TEXT }));
      return Promise.resolve();
    }
    return this.action({ type: "Teleport", point_id: pointId });
  }

  enterGame(): Promise<void> {
    return this.action({ type: "EnterGame" });
  }

  returnToRoaming(): Promise<void> {
    return this.action({ type: "ReturnToRoaming" });
  }

  touch(itemId: string): Promise<void> {
    return this.action({ type: "Touch", item_id: itemId });
  }

  grab(itemId: string): Promise<void> {
    return this.action({ type: "Grab", item_id: itemId });
  }

  rotate(itemId: string, rotation: Quat): Promise<void> {
    return this.action({ type: "Rotate", item_id: itemId, rotation });
  }

  release(itemId: string, pose: Pose): Promise<void> {
    return this.action({ type: "Release", item_id: itemId, pose });
  }

  openPanel(exhibitId: string): Promise<void> {
    return this.enqueue(async () => {
      const id = this.requireSession();
      this.set(beginRequest(this.state));
      try {
        const body = await this.client.sendAction(id, { type: "PanelOpen", exhibit_id: exhibitId });
        const knowledge = await this.client.getKnowledge(exhibitId);
        this.set(withDialog(applyServer(endRequest(this.state), body), {
          kind: "panel",
          exhibitId,
          title: knowledge.display_name,
          text: knowledge.knowledge_text,
        }));
      } catch (exc) {
        this.set(endRequest(this.state));
        this.fail(exc);
      }
    });
  }

  /** First click asks for confirmation (the "Yes" dialog); the answer is
   * only scored by confirmSubmit. */
  requestSubmit(): void {
    this.set(withDialog(this.state, { kind: "confirm-submit", text: CONFIRM_TEXT }));
  }

  confirmSubmit(): Promise<SubmitBody | null> {
    return this.enqueue(async () => {
      const id = this.requireSession();
      this.set(beginRequest(this.state));
      try {
        const body = await this.client.submit(id);
        let next = applyServer(endRequest(this.state), body);
        if (body.state.phase === "Finished") {
          next = withDialog(next, { kind: "finished", text: FINISHED_TEXT });
        } else if (body.passed) {
          next = withDialog(next, { kind: "pass", text: PASS_TEXT });
        } else {
          next = withDialog(next, { kind: "fail", text: FAIL_TEXT });
        }
        this.set(next);
        return body;
      } catch (exc) {
        this.set(endRequest(this.state));
        this.fail(exc);
        return null;
      }
    });
  }

  dismissDialog(): void {
    this.set(withDialog(this.state, null));
  }

  /** Refresh the mirror from the server without sending any event. */
  sync(): Promise<void> {
    return this.enqueue(async () => {
      const id = this.requireSession();
      this.set(applyServer(this.state, await this.client.getSession(id)));
    });
  }

  private action(action: Action): Promise<void> {
    return this.enqueue(async () => {
      const id = this.requireSession();
      this.set(beginRequest(this.state));
      try {
        const body = await this.client.sendAction(id, action);
        this.set(applyServer(endRequest(this.state), body));
      } catch (exc) {
        this.set(endRequest(this.state));
        this.fail(exc);
      }
    });
  }

  private requireSession(): string {
    if (!this.state.session) throw new Error("no session started");
    return this.state.session.session_id;
  }

  private fail(exc: unknown): void {
    if (exc instanceof ApiRequestError && exc.code === "gate-closed") {
      this.set(withDialog(this.state, { kind: "locked-gate", pointId: "", text: LOCKED_TEXT }));
    } else if (exc instanceof ApiRequestError) {
      this.set(withDialog(this.state, { kind: "error", text: `${exc.code}: ${exc.message}` }));
    } else if (exc instanceof NetworkError) {
      this.set(withBanner(this.state, "Connection lost. Retrying is safe; actions are idempotent."));
    } else {
      throw exc;
    }
  }
}
