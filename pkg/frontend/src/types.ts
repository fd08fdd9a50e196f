// Wire types of the stepping API; the UI never builds configurations itself.

export type LabelName = "square" | "ellipse" | "plusbox" | "circle" | "ruled4";
export type EdgeKindName = "solid" | "dotted";

export interface VertexJson {
  id: string;
  label: LabelName;
}

export interface EdgeJson {
  a: string;
  b: string;
  kind: EdgeKindName;
  exceptional: Record<string, boolean>;
}

export interface ConfigurationJson {
  k: number;
  vertices: VertexJson[];
  edges: EdgeJson[];
}

export interface SessionView {
  session: string;
  config: ConfigurationJson;
  eligible: string[][];
  history_len: number;
}
