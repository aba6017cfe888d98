import type { ClientState } from "./state.js";
import { gateOpen } from "./state.js";
import type { SceneDoc, Vec3 } from "./types.js";

/** One drawable/interactive thing for the binding layer to realize.
 * Keeping this a plain data structure lets every display rule be tested
 * without a GPU or DOM. */
export type RenderNode =
  | { kind: "exhibit"; id: string; asset: string; position: Vec3; highlighted: boolean; grabbed: boolean }
  | { kind: "panel-button"; id: string; exhibitId: string; position: Vec3 }
  | { kind: "container"; id: string; label: string; position: Vec3 }
  | { kind: "teleport-marker"; id: string; position: Vec3; locked: boolean }
  | { kind: "dialog"; dialog: string; text: string };

export function renderPlan(scene: SceneDoc, cs: ClientState): RenderNode[] {
  const nodes: RenderNode[] = [];
  const session = cs.session;
  if (!session) return nodes;
  const level = session.current_level;

  if (session.phase === "Roaming" || session.phase === "Finished") {
    const room = scene.rooms.find((r) => r.kind === "roaming" && r.level === level);
    for (const stand of scene.stands) {
      if (!room || stand.room_id !== room.id) continue;
      const ex = scene.exhibits.find((e) => e.id === stand.exhibit_id);
      if (!ex) continue;
      const [x, y, z] = stand.position;
      nodes.push({
        kind: "exhibit",
        id: ex.id,
        asset: ex.mesh_asset,
        position: [x, y + stand.height, z],
        highlighted: cs.hover === ex.id,
        grabbed: false,
      });
      nodes.push({
        kind: "panel-button",
        id: `${stand.id}-panel`,
        exhibitId: ex.id,
        position: stand.panel.button_position,
      });
    }
  }

  if (session.phase === "Game") {
    const cfg = scene.level_configs.find((c) => c.level === level);
    if (cfg) {
      for (const c of cfg.containers) {
        nodes.push({ kind: "container", id: c.id, label: c.label, position: c.position });
      }
      const itemIds = cfg.display_item_id
        ? [...cfg.game_item_ids, cfg.display_item_id]
        : cfg.game_item_ids;
      for (const itemId of itemIds) {
        const ex = scene.exhibits.find((e) => e.id === itemId);
        const pose = session.placements[itemId] ?? cfg.initial_poses[itemId];
        if (!ex || !pose) continue;
        nodes.push({
          kind: "exhibit",
          id: ex.id,
          asset: ex.mesh_asset,
          position: pose.position,
          highlighted: cs.hover === ex.id,
          grabbed: session.grabbed === ex.id,
        });
      }
    }
  }

  for (const p of scene.teleport.points) {
    if (p.level !== level) continue;
    // server authority: a gate renders open only if the server says so
    const locked = p.kind === "NextLevel" && !gateOpen(cs, p.id);
    nodes.push({ kind: "teleport-marker", id: p.id, position: p.position, locked });
  }

  if (cs.dialog) {
    nodes.push({ kind: "dialog", dialog: cs.dialog.kind, text: cs.dialog.text });
  }
  return nodes;
}
