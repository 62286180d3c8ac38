// Pure scene construction: SVG markup as a function of the last server
// payload plus local UI state. No visibility math happens here; what
// the server sent is exactly what gets drawn. Rendering the same model
// twice yields the identical string.

import type {
  GraphNode,
  GraphPayload,
  NodeDetail,
  PropertyDescriptor,
  SearchMatch,
} from './types.js';

export interface ConnectorToggles {
  isa: boolean;
  dashed: boolean;
  range: boolean;
  subproperty: boolean;
  disjoint: boolean;
}

export interface UiState {
  /** local-only magnification, applied on top of the server zoom */
  zoom: number;
  connectors: ConnectorToggles;
}

export const defaultUi: UiState = {
  zoom: 1,
  connectors: { isa: true, dashed: true, range: true,
                subproperty: true, disjoint: true },
};

// palette: the named colors are fixed, the rest are free choices kept
// in sync with the server's own SVG export
const ISA_COLOR = '#3566b5';
const SELECTED_COLOR = '#e08a2e';
const RANGE_COLOR = '#7fb3d5';
const DISJOINT_COLOR = '#cc2222';
const SUBPROP_BLACK = '#222222';
const SUBPROP_PINK = '#e75480';
const GUIDE_COLOR = '#d9d9d9';
const PRIMITIVE_FILL = '#ececec';
const ANONYMOUS_FILL = '#f5f0fa';
const DEFINED_FILL = '#ffffff';
const EQUIV_BAND_FILL = '#8fd19e';
const NODE_STROKE = '#808080';
const BAR_BG = '#dddddd';
const BAR_FILL = '#4caf50';
const MARKER_FILL = '#fff3c4';
const PROP_ROW_FILL = '#fffbe6';

const ROW_HEIGHT = 13;
const HANDLE = 9;

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

const fmt = (value: number): string => value.toFixed(2);

interface Pt {
  x: number;
  y: number;
}

function polyline(points: Pt[], stroke: string, dashed: boolean,
                  width = 1.2, extra = ''): string {
  const pts = points.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(' ');
  const dash = dashed ? ' stroke-dasharray="6 4"' : '';
  return `<polyline points="${pts}" fill="none" stroke="${stroke}"` +
    ` stroke-width="${fmt(width)}"${dash}${extra}/>`;
}

function propertyRowText(desc: PropertyDescriptor,
                         labels: Map<string, string>): string {
  const targets = [
    ...desc.rangeDatatypes,
    ...desc.rangeNodeIds.map((id) => labels.get(id) ?? id),
  ];
  const flags: string[] = [];
  if (desc.characteristics.functional) flags.push('functional');
  if (desc.characteristics.transitive) flags.push('transitive');
  for (const inv of desc.characteristics.inverseOf) {
    flags.push(`inverse of ${inv}`);
  }
  let text = desc.name;
  if (targets.length) text += ' : ' + targets.join(', ');
  if (flags.length) text += ' (' + flags.join(', ') + ')';
  if (desc.approximate) text += ' ~';
  return text;
}

/** bottom edge of a node including its deployed property rows */
function nodeExtent(node: GraphNode): number {
  const g = node.geometry;
  let bottom = g.y + g.height;
  if (node.markers.propertiesDeployed && node.properties.length) {
    bottom += 6 + ROW_HEIGHT * node.properties.length;
  }
  return bottom;
}

function renderHandles(node: GraphNode): string {
  const g = node.geometry;
  const mid = g.y + g.height / 2;
  const box = (x: number, y: number, action: string, glyph: string) =>
    `<g class="handle" data-node-id="${escapeXml(node.id)}"` +
    ` data-action="${action}">` +
    `<rect x="${fmt(x)}" y="${fmt(y)}" width="${HANDLE}"` +
    ` height="${HANDLE}" fill="#ffffff" stroke="${NODE_STROKE}"/>` +
    `<text x="${fmt(x + HANDLE / 2)}" y="${fmt(y + HANDLE - 2)}"` +
    ` font-size="9" text-anchor="middle">${glyph}</text></g>`;
  // left side drives the ancestor direction, right side descendants
  return box(g.x - HANDLE - 2, mid - HANDLE - 1, 'expand-ancestors', '+')
    + box(g.x - HANDLE - 2, mid + 1, 'collapse-ancestors', '−')
    + box(g.x + g.width + 2, mid - HANDLE - 1, 'expand-descendants', '+')
    + box(g.x + g.width + 2, mid + 1, 'collapse-descendants', '−');
}

function renderNode(node: GraphNode, labels: Map<string, string>): string {
  const g = node.geometry;
  const parts: string[] = [];
  const anonymous = node.kind === 'anonymous';
  const fill = node.kind === 'primitive' ? PRIMITIVE_FILL
    : anonymous ? ANONYMOUS_FILL : DEFINED_FILL;
  const dash = anonymous ? ' stroke-dasharray="3 2"' : '';

  parts.push(
    `<g class="node" data-node-id="${escapeXml(node.id)}" data-action="select">`,
    `<rect x="${fmt(g.x)}" y="${fmt(g.y)}" width="${fmt(g.width)}"` +
    ` height="${fmt(g.height)}" fill="${fill}" stroke="${NODE_STROKE}"` +
    `${dash} rx="3"/>`,
  );

  // visible-children ratio bar along the top edge
  const { visibleDescendants, totalDescendants } = node.counters;
  const barWidth = g.width - 8;
  const ratio = totalDescendants > 0
    ? visibleDescendants / totalDescendants : 0;
  parts.push(
    `<rect x="${fmt(g.x + 4)}" y="${fmt(g.y + 2)}" width="${fmt(barWidth)}"` +
    ` height="3" fill="${BAR_BG}"/>`,
    `<rect x="${fmt(g.x + 4)}" y="${fmt(g.y + 2)}"` +
    ` width="${fmt(barWidth * ratio)}" height="3" fill="${BAR_FILL}"/>`,
  );

  if (node.kind === 'defined') {
    parts.push(
      `<rect x="${fmt(g.x + 4)}" y="${fmt(g.y + g.height - 6)}"` +
      ` width="${fmt(barWidth)}" height="4" fill="${EQUIV_BAND_FILL}"/>`,
    );
  }

  const italic = anonymous ? ' font-style="italic"' : '';
  parts.push(
    `<text x="${fmt(g.x + g.width / 2)}" y="${fmt(g.y + g.height / 2 + 4)}"` +
    ` text-anchor="middle" font-size="11"${italic}>` +
    `${escapeXml(node.label)}</text>`,
  );

  // D and P badges in the top-right corner, filled when deployed
  let badgeX = g.x + g.width - 12;
  const badge = (glyph: string, action: string, deployed: boolean) => {
    const weight = deployed ? ' font-weight="bold"' : '';
    const out =
      `<g class="badge" data-node-id="${escapeXml(node.id)}"` +
      ` data-action="${action}">` +
      `<rect x="${fmt(badgeX)}" y="${fmt(g.y - 5)}" width="10" height="10"` +
      ` fill="${MARKER_FILL}" stroke="${NODE_STROKE}"/>` +
      `<text x="${fmt(badgeX + 5)}" y="${fmt(g.y + 3)}" font-size="8"` +
      ` text-anchor="middle"${weight}>${glyph}</text></g>`;
    badgeX -= 12;
    return out;
  };
  if (node.markers.hasProperties) {
    parts.push(badge('P', 'toggle-properties', node.markers.propertiesDeployed));
  }
  if (node.markers.hasDisjoint) {
    parts.push(badge('D', 'toggle-disjoint', node.markers.disjointDeployed));
  }

  // deployed property list beneath the node
  if (node.markers.propertiesDeployed) {
    node.properties.forEach((desc, i) => {
      const rowY = g.y + g.height + 6 + ROW_HEIGHT * i;
      parts.push(
        `<g class="prop-row" data-property="${escapeXml(desc.iri)}">` +
        `<rect x="${fmt(g.x)}" y="${fmt(rowY)}" width="${fmt(g.width)}"` +
        ` height="${ROW_HEIGHT}" fill="${PROP_ROW_FILL}"` +
        ` stroke="${NODE_STROKE}" stroke-width="0.5"/>` +
        `<text x="${fmt(g.x + 3)}" y="${fmt(rowY + 10)}" font-size="9">` +
        `${escapeXml(propertyRowText(desc, labels))}</text></g>`,
      );
    });
  }

  parts.push(renderHandles(node), '</g>');
  return parts.join('');
}

function hierarchyEdges(payload: GraphPayload, ui: UiState,
                        rect: Map<string, GraphNode>): string[] {
  const parts: string[] = [];
  const selection = payload.state.selection;
  const draw = (edges: GraphPayload['edges']['isa'], dashed: boolean) => {
    for (const edge of edges) {
      const child = rect.get(edge.child);
      const parent = rect.get(edge.parent);
      if (!child || !parent) continue;
      const selected = selection === edge.child || selection === edge.parent;
      const stroke = selected ? SELECTED_COLOR : ISA_COLOR;
      const cg = child.geometry;
      const pg = parent.geometry;
      const points: Pt[] = [
        { x: cg.x, y: cg.y + cg.height / 2 },
        ...edge.waypoints.map(([x, y]) => ({ x, y })),
        { x: pg.x + pg.width, y: pg.y + pg.height / 2 },
      ];
      const kind = dashed ? 'dashed' : 'isa';
      parts.push(polyline(points, stroke, dashed, 1.2,
                          ` data-edge="${kind}"`));
    }
  };
  if (ui.connectors.isa) draw(payload.edges.isa, false);
  if (ui.connectors.dashed) draw(payload.edges.dashed, true);
  return parts;
}

function decorationEdges(payload: GraphPayload, ui: UiState,
                         rect: Map<string, GraphNode>): string[] {
  const parts: string[] = [];

  if (ui.connectors.range) {
    for (const edge of payload.edges.range) {
      const carrier = rect.get(edge.carrier);
      const target = rect.get(edge.target);
      if (!carrier || !target) continue;
      if (!carrier.markers.propertiesDeployed) continue;
      const a = carrier.geometry;
      const b = target.geometry;
      parts.push(polyline(
        [{ x: a.x + a.width / 2, y: nodeExtent(carrier) },
         { x: b.x + b.width / 2, y: b.y + b.height }],
        RANGE_COLOR, false, 1.2, ' data-edge="range"'));
    }
  }

  if (ui.connectors.subproperty) {
    // connect deployed property rows; the pair of strokes is the
    // connector's identity
    const rowCenter = new Map<string, Pt>();
    for (const node of payload.nodes) {
      if (!node.markers.propertiesDeployed) continue;
      node.properties.forEach((desc, i) => {
        if (!rowCenter.has(desc.iri)) {
          const g = node.geometry;
          rowCenter.set(desc.iri, {
            x: g.x + g.width / 2,
            y: g.y + g.height + 6 + ROW_HEIGHT * i + ROW_HEIGHT / 2,
          });
        }
      });
    }
    for (const edge of payload.edges.subproperty) {
      const from = rowCenter.get(edge.sub);
      const to = rowCenter.get(edge.sup);
      if (!from || !to) continue;
      parts.push(
        polyline([{ x: from.x, y: from.y - 1 }, { x: to.x, y: to.y - 1 }],
                 SUBPROP_BLACK, false, 1.0, ' data-edge="subproperty"'),
        polyline([{ x: from.x, y: from.y + 1 }, { x: to.x, y: to.y + 1 }],
                 SUBPROP_PINK, false, 1.0, ' data-edge="subproperty"'),
      );
    }
  }

  if (ui.connectors.disjoint) {
    for (const edge of payload.edges.disjoint) {
      const a = rect.get(edge.a);
      const b = rect.get(edge.b);
      if (!a || !b) continue;
      if (!a.markers.disjointDeployed && !b.markers.disjointDeployed) continue;
      const ag = a.geometry;
      const bg = b.geometry;
      for (const offset of [-1.5, 1.5]) {
        parts.push(polyline(
          [{ x: ag.x + ag.width / 2, y: ag.y + ag.height / 2 + offset },
           { x: bg.x + bg.width / 2, y: bg.y + bg.height / 2 + offset }],
          DISJOINT_COLOR, false, 1.0, ' data-edge="disjoint"'));
      }
    }
  }
  return parts;
}

function guideLines(payload: GraphPayload, height: number): string[] {
  // one guide between consecutive level bands
  const starts = new Map<number, number>();
  for (const node of payload.nodes) {
    const current = starts.get(node.level);
    if (current === undefined || node.geometry.x < current) {
      starts.set(node.level, node.geometry.x);
    }
  }
  return [...starts.entries()]
    .filter(([level]) => level > 0)
    .sort(([a], [b]) => a - b)
    .map(([, x]) => {
      const gx = x - 16;
      return `<line x1="${fmt(gx)}" y1="0" x2="${fmt(gx)}"` +
        ` y2="${fmt(height)}" stroke="${GUIDE_COLOR}" stroke-width="1"/>`;
    });
}

/** The whole visible graph as an SVG element string. */
export function renderScene(payload: GraphPayload,
                            ui: UiState = defaultUi): string {
  const rect = new Map(payload.nodes.map((n) => [n.id, n]));
  const labels = new Map(payload.nodes.map((n) => [n.id, n.label]));

  let width = 0;
  let height = 0;
  for (const node of payload.nodes) {
    width = Math.max(width, node.geometry.x + node.geometry.width + 40);
    height = Math.max(height, nodeExtent(node) + 40);
  }
  width = Math.max(width, 80);
  height = Math.max(height, 60);

  const zoom = payload.state.zoom * ui.zoom;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg"` +
    ` width="${fmt(width * zoom)}" height="${fmt(height * zoom)}"` +
    ` viewBox="0 0 ${fmt(width)} ${fmt(height)}" font-family="Helvetica,` +
    ` Arial, sans-serif">`,
    `<rect x="0" y="0" width="${fmt(width)}" height="${fmt(height)}"` +
    ` fill="#ffffff"/>`,
    ...guideLines(payload, height),
    ...hierarchyEdges(payload, ui, rect),
    ...decorationEdges(payload, ui, rect),
    ...payload.nodes.map((n) => renderNode(n, labels)),
    '</svg>',
  ];
  return parts.join('\n');
}

/** Tooltip body for a node, as HTML. */
export function renderTooltip(detail: NodeDetail): string {
  const section = (title: string, items: string[]): string =>
    items.length
      ? `<div class="tip-section"><b>${escapeXml(title)}</b> ` +
        items.map(escapeXml).join(', ') + '</div>'
      : '';
  const chips = detail.properties.map((p) => {
    const marks: string[] = [];
    if (p.characteristics.functional) marks.push('functional');
    if (p.characteristics.transitive) marks.push('transitive');
    for (const inv of p.characteristics.inverseOf) {
      marks.push(`inverseOf ${inv}`);
    }
    return marks.length ? `${p.name} (${marks.join(', ')})` : p.name;
  });
  return [
    `<div class="tip-title">${escapeXml(detail.label)}` +
    ` <span class="tip-kind">${detail.kind}</span></div>`,
    section('equivalent to:', detail.equivalents),
    section('members:', detail.members),
    section('parents:', detail.parents.map((p) => p.label)),
    section('children:', detail.children.map((c) => c.label)),
    section('disjoint with:', detail.disjointWith.map((d) => d.label)),
    section('properties:', chips),
    section('instances:', detail.instances),
    `<div class="tip-section">descendants:` +
    ` ${detail.counters.totalDescendants}</div>`,
  ].filter(Boolean).join('');
}

/** Search dropdown rows, as HTML. */
export function renderSearchResults(matches: SearchMatch[]): string {
  if (!matches.length) return '<div class="search-empty">no matches</div>';
  return matches.map((m) =>
    `<div class="search-hit" data-node-id="${escapeXml(m.id)}">` +
    `${escapeXml(m.label)}${m.visible ? '' : ' <i>(hidden)</i>'}</div>`,
  ).join('');
}

/** Status line under the toolbar. */
export function renderCounters(payload: GraphPayload): string {
  const { visibleNodes, totalNodes } = payload.counters;
  return `${visibleNodes} of ${totalNodes} nodes visible` +
    ` | policy ${payload.state.policy}` +
    ` | step ${payload.state.stepPercent}%`;
}
