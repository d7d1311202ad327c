// Wire types mirroring the backend's snapshot / command JSON.

export interface ReaderState {
  id: string;
  x: number;
  y: number;
  range: number;
}

export interface TagState {
  id: string;
  x: number;
  y: number;
  estimate: [number, number] | null;
}

export interface ObstacleState {
  id: string;
  orientation: "horizontal" | "vertical";
  x: number;
  y: number;
  length: number;
  material: string;
  thickness_cm: number;
}

export interface MeasurementState {
  reader_id: string;
  anchor: [number, number];
  distance: number;
  true_distance: number;
  loss_added: number;
  noise: number;
  in_range: boolean;
}

export interface FixRecordState {
  tick: number;
  tag_id: string;
  true_position: [number, number];
  estimate: [number, number] | null;
  selected: string[];
  error: number | null;
  measurements: MeasurementState[];
}

export interface MaterialRow {
  name: string;
  coefficient: number;
  thickness_cm: number;
}

export interface Snapshot {
  tick: number;
  world: number;
  readers: ReaderState[];
  tags: TagState[];
  obstacles: ObstacleState[];
  records: FixRecordState[];
  materials: MaterialRow[];
  config: { gain: number; noise_sigma: number; seed: number };
}

export type ObstacleKind = "wall" | "glass" | "wood" | "iron";

export type Command =
  | { type: "step"; n: number }
  | {
      type: "add_obstacle";
      id: string;
      kind: ObstacleKind;
      orientation: "horizontal" | "vertical";
      x: number;
      y: number;
      length: number;
    }
  | { type: "remove_obstacle"; id: string }
  | { type: "set_reader_range"; id: string; range: number }
  | { type: "move_tag"; id: string; x: number; y: number }
  | { type: "set_gain"; gain: number }
  | { type: "set_noise"; noise_sigma: number }
  | { type: "reset"; scenario: unknown };
