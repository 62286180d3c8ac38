// Mirror of the server's JSON payloads (docs/api-schema.md in the
// engine repository). Field names match the wire format exactly.

export type NodeKind = 'primitive' | 'defined' | 'anonymous';

export interface Geometry {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface NodeCounters {
  visibleDescendants: number;
  totalDescendants: number;
}

export interface NodeMarkers {
  hasDisjoint: boolean;
  hasProperties: boolean;
  disjointDeployed: boolean;
  propertiesDeployed: boolean;
}

export interface PropertyDescriptor {
  iri: string;
  name: string;
  isData: boolean;
  rangeNodeIds: string[];
  rangeDatatypes: string[];
  characteristics: {
    functional: boolean;
    transitive: boolean;
    inverseOf: string[];
  };
  superProperties: string[];
  approximate: boolean;
}

export interface GraphNode {
  id: string;
  kind: NodeKind;
  label: string;
  equivalents: string[];
  members: string[];
  level: number;
  geometry: Geometry;
  counters: NodeCounters;
  markers: NodeMarkers;
  parents: string[];
  children: string[];
  properties: PropertyDescriptor[];
  instances: string[];
}

export interface HierarchyEdge {
  child: string;
  parent: string;
  waypoints: [number, number][];
}

export interface RangeEdge {
  carrier: string;
  property: string;
  target: string;
}

export interface SubPropertyEdge {
  sub: string;
  sup: string;
  subName: string;
  supName: string;
}

export interface DisjointEdge {
  a: string;
  b: string;
}

export interface GraphEdges {
  isa: HierarchyEdge[];
  dashed: HierarchyEdge[];
  range: RangeEdge[];
  subproperty: SubPropertyEdge[];
  disjoint: DisjointEdge[];
}

export interface ViewStatePayload {
  policy: string;
  stepPercent: number;
  zoom: number;
  selection: string | null;
  detailWindow: { upper: string; lower: string };
}

export interface GraphPayload {
  nodes: GraphNode[];
  edges: GraphEdges;
  state: ViewStatePayload;
  counters: { visibleNodes: number; totalNodes: number };
}

export interface SessionCreated {
  sessionId: string;
  timings: Record<string, number>;
  skips: string[];
  graph: GraphPayload;
}

export interface ExpandResponse extends GraphPayload {
  revealed: string[];
}

export interface CollapseResponse extends GraphPayload {
  hidden: string[];
}

export interface SearchMatch {
  id: string;
  label: string;
  visible: boolean;
}

export interface NodeDetail {
  id: string;
  kind: NodeKind;
  label: string;
  visible: boolean;
  members: string[];
  equivalents: string[];
  parents: { id: string; label: string }[];
  children: { id: string; label: string }[];
  disjointWith: { id: string; label: string }[];
  properties: PropertyDescriptor[];
  instances: string[];
  counters: { totalDescendants: number };
}

export interface Capabilities {
  service: string;
  version: string;
  scorers: string[];
  policies: string[];
}
