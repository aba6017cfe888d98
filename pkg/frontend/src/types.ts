// Wire types mirroring the gateway's JSON payloads.

export type Vec3 = [number, number, number];
export type Quat = [number, number, number, number];

export interface Pose {
  position: Vec3;
  rotation?: Quat;
}

export interface SessionState {
  session_id: string;
  current_level: number;
  phase: "Roaming" | "Game" | "Finished";
  placements: Record<string, Pose>;
  grabbed: string | null;
  attempts: Record<string, number>;
  gates_open: string[];
  passed_levels: number[];
  player_position: Vec3;
}

export interface SessionBody {
  session_id: string;
  created_at: string;
  scene_version: string;
  state: SessionState;
}

export interface SubmitBody extends SessionBody {
  result: {
    per_item: Record<string, { assigned_container: string | null; correct: boolean }>;
    correct_count: number;
    accuracy: number;
    passed: boolean;
  };
  accuracy: number;
  passed: boolean;
  level: number;
  gate_opened: string | null;
}

export interface Exhibit {
  id: string;
  mesh_asset: string;
  display_name: string;
  knowledge_text: string;
  category: string;
  purpose: string;
  dynasty: string;
  level: number;
}

export interface Stand {
  id: string;
  room_id: string;
  position: Vec3;
  height: number;
  exhibit_id: string;
  panel: { button_position: Vec3; text_height: number };
}

export interface Room {
  id: string;
  kind: "roaming" | "game";
  level: number;
  floor_min: [number, number];
  floor_max: [number, number];
}

export interface TeleportPoint {
  id: string;
  position: Vec3;
  kind: "Plain" | "NextLevel" | "ReturnToRoaming";
  initially_open: boolean;
  level: number;
}

export interface Container {
  id: string;
  label: string;
  kind: string;
  position: Vec3;
  capacity: number;
  accepts: string;
  interaction_radius_a: number;
}

export interface LevelConfig {
  level: number;
  theme: "Category" | "Purpose" | "Dynasty";
  game_item_ids: string[];
  required_placements: number;
  containers: Container[];
  pass_threshold: number;
  threshold_strict: boolean;
  initial_poses: Record<string, Pose>;
  display_item_id: string | null;
}

export interface SceneDoc {
  version: string;
  name: string;
  rooms: Room[];
  exhibits: Exhibit[];
  stands: Stand[];
  teleport: { areas: { id: string; polygon: [number, number][] }[]; points: TeleportPoint[] };
  lighting: {
    ambient_intensity: number;
    directional: { direction: Vec3; intensity: number };
    spotlights: { target_exhibit_id: string; position: Vec3; cone_angle_deg: number }[];
  };
  level_configs: LevelConfig[];
}

export interface Knowledge {
  exhibit_id: string;
  display_name: string;
  knowledge_text: string;
}
