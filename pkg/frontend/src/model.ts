/** Document shapes for VTA-JSON 5.0 traces and replayed state exports. */

export type Scalar = number | string | null;

export interface StyleDef {
  fill: string;
  stroke: string;
  text: string;
}

export interface ArrayElementDoc {
  index: number;
  value: Scalar;
  styleKey: string;
}

export interface ArrayStateDoc {
  type: "array";
  structure: ArrayElementDoc[];
  pointers: Record<string, number | null>;
}

export interface GraphNodeDoc {
  id: string;
  label: string;
  styleKey: string;
  properties?: Record<string, Scalar>;
}

export interface GraphEdgeDoc {
  from: string;
  to: string;
  weight?: number;
  directed: boolean;
  styleKey: string;
}

export interface GraphStateDoc {
  type: "graph";
  structure: { nodes: GraphNodeDoc[]; edges: GraphEdgeDoc[] };
}

export interface TreeNodeDoc {
  id: string;
  label: string;
  styleKey: string;
}

export interface TreeStateDoc {
  type: "tree";
  structure: { nodes: TreeNodeDoc[]; children: Record<string, (string | null)[]> };
}

export interface BucketEntryDoc {
  key: string | number;
  value: Scalar;
  styleKey: string;
}

export interface HashtableStateDoc {
  type: "hashtable";
  structure: { buckets: BucketEntryDoc[][] };
}

export interface TableCellDoc {
  value: Scalar;
  styleKey: string;
}

export interface CellRefDoc {
  row: number;
  col: number;
}

export interface TableStateDoc {
  type: "table";
  structure: {
    rows: number;
    cols: number;
    cells: TableCellDoc[][];
    row_labels?: string[];
    col_labels?: string[];
  };
  dependencies: { from: CellRefDoc; to: CellRefDoc }[];
}

export type DataStateDoc =
  | ArrayStateDoc
  | GraphStateDoc
  | TreeStateDoc
  | HashtableStateDoc
  | TableStateDoc;

export interface AuxEntryDoc {
  key?: Scalar;
  value: Scalar;
  styleKey: string;
}

export interface AuxViewDoc {
  name: string;
  kind: "list" | "map";
  entries: AuxEntryDoc[];
}

export interface AnchorDoc {
  view: string;
  element?: string | number | CellRefDoc;
}

export interface CommentDoc {
  id: string;
  text: string;
  anchor: AnchorDoc;
}

/** One replayed frame, shaped exactly like the pipeline's state exports. */
export interface StateDoc {
  data_state: DataStateDoc;
  auxiliary_views: AuxViewDoc[];
  styles: { elementStyles: Record<string, StyleDef> };
  pseudocode: string[];
  highlight: number[];
  comments: CommentDoc[];
}

export interface OperationDoc {
  op: string;
  params: Record<string, unknown>;
}

export interface DeltaDoc {
  action_description?: string;
  code_highlight: number | number[];
  operations: OperationDoc[][];
}

export interface TraceDoc {
  vta_version: string;
  algorithm?: { name?: string; family?: string };
  initial_frame: {
    data_schema?: unknown;
    data_state: unknown;
    auxiliary_views?: unknown;
    styles?: unknown;
    pseudocode?: unknown;
  };
  deltas: DeltaDoc[];
  required_extensions?: string[];
}

export interface Diagnostic {
  severity: "error" | "warning";
  code: string;
  path: string;
  message: string;
  delta_index?: number;
}

export const VTA_VERSION = "5.0";

export const KNOWN_EXTENSIONS = [
  "vta-ext-primitive-array",
  "vta-ext-primitive-graph",
  "vta-ext-primitive-tree",
  "vta-ext-primitive-hashtable",
  "vta-ext-primitive-table",
];

export const IDLE_STYLE: StyleDef = { fill: "#2C3E50", stroke: "#7F8C8D", text: "#FFFFFF" };

/** Required parameter names per op code (the closed 24-op catalogue). */
export const OP_PARAMS: Record<string, string[]> = {
  updateStyle: ["indices", "styleKey"],
  moveElements: ["pairs"],
  shiftElements: ["range", "offset"],
  updateValues: ["assignments"],
  setPointer: ["name", "index"],
  clearPointer: ["name"],
  updateNodeStyle: ["ids", "styleKey"],
  updateNodeProperties: ["id", "properties"],
  updateEdgeStyle: ["edges", "styleKey"],
  addNode: ["node"],
  removeNode: ["id"],
  addChild: ["parent", "node", "position"],
  reparent: ["id", "newParent", "position"],
  rotate: ["pivot", "direction"],
  insertIntoBucket: ["bucket", "key", "value"],
  rehash: ["newCapacity", "placement"],
  highlightCollision: ["bucket", "styleKey"],
  updateTableCell: ["row", "col", "value"],
  highlightTableCell: ["cells", "styleKey"],
  showDependency: ["from", "to"],
  showComment: ["id", "text", "anchor"],
  hideComment: ["id"],
  appendToList: ["view", "entry"],
  popFromList: ["view", "end"],
};

export function deepCopy<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
