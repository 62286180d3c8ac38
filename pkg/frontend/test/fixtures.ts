// Hand-built payloads shaped exactly like the wire format, small
// enough that expected render output can be reasoned out by eye.

import type { GraphNode, GraphPayload } from '../src/types.js';

export function node(partial: Partial<GraphNode> & { id: string }): GraphNode {
  return {
    kind: 'primitive',
    label: partial.id,
    equivalents: [],
    members: [partial.id],
    level: 0,
    geometry: { x: 10, y: 40, width: 90, height: 28 },
    counters: { visibleDescendants: 0, totalDescendants: 0 },
    markers: { hasDisjoint: false, hasProperties: false,
               disjointDeployed: false, propertiesDeployed: false },
    parents: [],
    children: [],
    properties: [],
    instances: [],
    ...partial,
  };
}

export function payload(nodes: GraphNode[],
                        overrides: Partial<GraphPayload> = {}): GraphPayload {
  return {
    nodes,
    edges: { isa: [], dashed: [], range: [], subproperty: [], disjoint: [] },
    state: { policy: 'relevance', stepPercent: 25, zoom: 1,
             selection: null,
             detailWindow: { upper: 'owl:Thing', lower: 'owl:Nothing' } },
    counters: { visibleNodes: nodes.length, totalNodes: nodes.length },
    ...overrides,
  };
}

/** Thing with a defined child A, primitive child B and an anonymous
 *  grandchild under A; enough structure for every connector kind. */
export function smallGraph(): GraphPayload {
  const thing = node({
    id: 'n-thing',
    label: 'Thing',
    level: 0,
    geometry: { x: 10, y: 60, width: 90, height: 28 },
    counters: { visibleDescendants: 3, totalDescendants: 3 },
    children: ['n-a', 'n-b'],
  });
  const defined = node({
    id: 'n-a',
    label: 'A',
    kind: 'defined',
    level: 1,
    equivalents: ['B and (hasPart some B)'],
    geometry: { x: 140, y: 10, width: 110, height: 34 },
    counters: { visibleDescendants: 1, totalDescendants: 1 },
    parents: ['n-thing'],
    children: ['n-anon'],
    markers: { hasDisjoint: true, hasProperties: true,
               disjointDeployed: false, propertiesDeployed: true },
    properties: [
      {
        iri: 'http://x#hasPart',
        name: 'hasPart',
        isData: false,
        rangeNodeIds: ['n-b'],
        rangeDatatypes: [],
        characteristics: { functional: true, transitive: false,
                           inverseOf: ['partOf'] },
        superProperties: ['related'],
        approximate: false,
      },
      {
        iri: 'http://x#related',
        name: 'related',
        isData: false,
        rangeNodeIds: [],
        rangeDatatypes: [],
        characteristics: { functional: false, transitive: false,
                           inverseOf: [] },
        superProperties: [],
        approximate: false,
      },
    ],
  });
  const primitive = node({
    id: 'n-b',
    label: 'B',
    level: 1,
    geometry: { x: 140, y: 110, width: 90, height: 28 },
    parents: ['n-thing'],
    markers: { hasDisjoint: true, hasProperties: false,
               disjointDeployed: true, propertiesDeployed: false },
  });
  const anonymous = node({
    id: 'n-anon',
    label: 'hasPart some B',
    kind: 'anonymous',
    level: 2,
    members: [],
    geometry: { x: 300, y: 20, width: 130, height: 24 },
    parents: ['n-a'],
  });
  return payload([thing, defined, primitive, anonymous], {
    edges: {
      isa: [
        { child: 'n-a', parent: 'n-thing', waypoints: [] },
        { child: 'n-b', parent: 'n-thing', waypoints: [] },
        { child: 'n-anon', parent: 'n-a', waypoints: [] },
      ],
      dashed: [
        { child: 'n-anon', parent: 'n-thing', waypoints: [[120, 50]] },
      ],
      range: [
        { carrier: 'n-a', property: 'hasPart', target: 'n-b' },
      ],
      subproperty: [
        { sub: 'http://x#hasPart', sup: 'http://x#related',
          subName: 'hasPart', supName: 'related' },
      ],
      disjoint: [{ a: 'n-a', b: 'n-b' }],
    },
  });
}
