import type { SceneDoc, SessionBody, SessionState } from "../src/types.js";

export function miniScene(): SceneDoc {
  return {
    version: "1",
    name: "mini",
    rooms: [
      { id: "r1", kind: "roaming", level: 1, floor_min: [0, 0], floor_max: [20, 20] },
      { id: "g1", kind: "game", level: 1, floor_min: [20, 0], floor_max: [40, 20] },
    ],
    exhibits: [
      {
        id: "vase", mesh_asset: "vase.glb", display_name: "Vase",
        knowledge_text: "Old.", category: "Bottle", purpose: "Eating",
        dynasty: "Han", level: 1,
      },
      {
        id: "tripod", mesh_asset: "tripod.glb", display_name: "Tripod",
        knowledge_text: "Older.", category: "Tripod", purpose: "Sacrifice",
        dynasty: "ShangZhou", level: 1,
      },
    ],
    stands: [
      {
        id: "s1", room_id: "r1", position: [2, 0, 2], height: 1.0, exhibit_id: "vase",
        panel: { button_position: [2.5, 1.4, 2], text_height: 1.5 },
      },
    ],
    teleport: {
      areas: [{ id: "a1", polygon: [[0, 0], [20, 0], [20, 20], [0, 20]] }],
      points: [
        { id: "spawn", position: [1, 0, 1], kind: "Plain", initially_open: true, level: 1 },
        { id: "next_level_1", position: [19, 0, 10], kind: "NextLevel", initially_open: false, level: 1 },
      ],
    },
    lighting: {
      ambient_intensity: 1,
      directional: { direction: [0, -1, 0], intensity: 1 },
      spotlights: [],
    },
    level_configs: [
      {
        level: 1, theme: "Category", game_item_ids: ["vase", "tripod"],
        required_placements: 2,
        containers: [
          {
            id: "c1", label: "Bottles", kind: "Shelf", position: [25, 0, 5],
            capacity: 3, accepts: "Bottle", interaction_radius_a: 0.5,
          },
        ],
        pass_threshold: 0.8, threshold_strict: true,
        initial_poses: {
          vase: { position: [30, 1, 10] },
          tripod: { position: [31, 1, 10] },
        },
        display_item_id: null,
      },
    ],
  };
}

export function roamingState(overrides: Partial<SessionState> = {}): SessionState {
  return {
    session_id: "s1",
    current_level: 1,
    phase: "Roaming",
    placements: {},
    grabbed: null,
    attempts: { "1": 0, "2": 0, "3": 0 },
    gates_open: ["spawn"],
    passed_levels: [],
    player_position: [1, 0, 1],
    ...overrides,
  };
}

export function body(state: SessionState, sceneVersion = "1"): SessionBody {
  return {
    session_id: state.session_id,
    created_at: "2026-01-01T00:00:00Z",
    scene_version: sceneVersion,
    state,
  };
}
