// Wires the toolbar and the SVG scene to the API client. The app keeps
// exactly two pieces of state: the last payload the server returned and
// local presentation toggles. Every visibility change round-trips the
// API and the UI redraws from the response, so it can never drift from
// the server.

import { ApiClient, ApiError } from './api.js';
import {
  defaultUi,
  renderCounters,
  renderScene,
  renderSearchResults,
  renderTooltip,
  type UiState,
} from './render.js';
import type { GraphPayload } from './types.js';

export type DownloadSink = (filename: string, content: string,
                            mimeType: string) => void;

const browserDownload: DownloadSink = (filename, content, mimeType) => {
  const blob = new Blob([content], { type: mimeType });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement('a');
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
};

const HELP_TEXT = `Click a node to select it; its connectors highlight.
Right side handles expand/collapse descendants, left side ancestors.
Right-click a node for its visibility slider. D and P badges toggle
disjointness lines and the property list. The search box matches labels;
picking a hit makes the node visible and centers it.`;

export class App {
  readonly api: ApiClient;
  private root: Document;
  private ui: UiState = { ...defaultUi, connectors: { ...defaultUi.connectors } };
  private payload: GraphPayload | null = null;
  private lastRendered = '';
  private download: DownloadSink;

  constructor(root: Document, api: ApiClient,
              download: DownloadSink = browserDownload) {
    this.root = root;
    this.api = api;
    this.download = download;
    this.bindToolbar();
    this.bindScene();
  }

  private byId<T extends HTMLElement>(id: string): T {
    const el = this.root.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
  }

  get graph(): GraphPayload | null {
    return this.payload;
  }

  // ----- rendering

  private apply(payload: GraphPayload): void {
    this.payload = payload;
    this.redraw();
  }

  private redraw(): void {
    if (!this.payload) return;
    const scene = renderScene(this.payload, this.ui);
    if (scene !== this.lastRendered) {
      this.byId('scene').innerHTML = scene;
      this.lastRendered = scene;
    }
    this.byId('counters').textContent = renderCounters(this.payload);
  }

  notice(message: string): void {
    const box = this.byId('notices');
    const item = this.root.createElement('div');
    item.className = 'notice';
    item.textContent = message;
    box.appendChild(item);
    setTimeout(() => item.remove(), 6000);
  }

  /** run an API call, apply the returned graph, report failures */
  private async run(call: () => Promise<GraphPayload>): Promise<void> {
    try {
      this.apply(await call());
    } catch (error) {
      this.notice(error instanceof ApiError
        ? `server: ${error.message}` : String(error));
    }
  }

  // ----- session

  async loadDocument(text: string): Promise<void> {
    try {
      await this.api.deleteSession();
    } catch {
      // a vanished session is fine, we are replacing it anyway
    }
    try {
      const created = await this.api.createSession(text);
      for (const skip of created.skips) this.notice(skip);
      this.apply(created.graph);
    } catch (error) {
      if (error instanceof ApiError && error.errors.length) {
        for (const e of error.errors.slice(0, 5)) {
          this.notice(`line ${e.line}:${e.column}: ${e.message}`);
        }
      } else {
        this.notice(error instanceof Error ? error.message : String(error));
      }
    }
  }

  // ----- toolbar

  private bindToolbar(): void {
    const file = this.byId<HTMLInputElement>('load-file');
    file.addEventListener('change', async () => {
      const chosen = file.files?.[0];
      if (chosen) this.loadDocument(await chosen.text());
    });

    this.byId('step-apply').addEventListener('click', () => {
      const value = Number(this.byId<HTMLInputElement>('step-input').value);
      this.run(() => this.api.setStep(value));
    });

    this.byId<HTMLSelectElement>('policy-select')
      .addEventListener('change', (event) => {
        const policy = (event.target as HTMLSelectElement).value;
        this.run(() => this.api.setPolicy(policy));
      });

    this.byId('summarize-apply').addEventListener('click', () => {
      const method = this.byId<HTMLSelectElement>('summarize-method').value;
      const n = Number(this.byId<HTMLInputElement>('summarize-n').value);
      this.run(() => this.api.summarize(method, n));
    });

    this.byId('window-apply').addEventListener('click', () => {
      const upper = this.byId<HTMLInputElement>('window-upper').value;
      const lower = this.byId<HTMLInputElement>('window-lower').value;
      this.run(() => this.api.setDetailWindow(upper, lower));
    });

    // zoom is presentation-only: rescale locally, no API round-trip
    this.byId('zoom-in').addEventListener('click', () => {
      this.ui.zoom = Math.min(4, this.ui.zoom * 1.25);
      this.redraw();
    });
    this.byId('zoom-out').addEventListener('click', () => {
      this.ui.zoom = Math.max(0.25, this.ui.zoom / 1.25);
      this.redraw();
    });

    this.byId('snapshot').addEventListener('click', async () => {
      try {
        const svg = await this.api.exportSvg();
        this.download('ontoview.svg', svg, 'image/svg+xml');
      } catch (error) {
        this.notice(String(error));
      }
    });

    this.byId('view-save').addEventListener('click', async () => {
      try {
        const doc = await this.api.saveView();
        this.download('view.ontview', doc, 'text/plain');
      } catch (error) {
        this.notice(String(error));
      }
    });

    const viewFile = this.byId<HTMLInputElement>('view-restore');
    viewFile.addEventListener('change', async () => {
      const chosen = viewFile.files?.[0];
      if (chosen) {
        const text = await chosen.text();
        this.run(() => this.api.restoreView(text));
      }
    });

    const search = this.byId<HTMLInputElement>('search-input');
    search.addEventListener('input', () => this.searchNow(search.value));

    const results = this.byId('search-results');
    results.addEventListener('click', (event) => {
      const hit = (event.target as HTMLElement).closest('.search-hit');
      const nodeId = hit?.getAttribute('data-node-id');
      if (nodeId) this.revealHit(nodeId);
    });

    for (const name of ['isa', 'dashed', 'range', 'subproperty',
                        'disjoint'] as const) {
      this.byId<HTMLInputElement>(`show-${name}`)
        .addEventListener('change', (event) => {
          this.ui.connectors[name] = (event.target as HTMLInputElement).checked;
          this.redraw();
        });
    }

    this.byId('help').addEventListener('click', () => this.notice(HELP_TEXT));
  }

  private async searchNow(q: string): Promise<void> {
    const box = this.byId('search-results');
    if (!q.trim() || !this.api.session) {
      box.innerHTML = '';
      return;
    }
    try {
      const { matches } = await this.api.search(q);
      box.innerHTML = renderSearchResults(matches);
    } catch (error) {
      this.notice(String(error));
    }
  }

  private async revealHit(nodeId: string): Promise<void> {
    // a hidden hit is revealed by expanding its closest visible
    // ancestor until the server reports the hit visible; the client
    // only relays what the server returns
    try {
      let detail = await this.api.nodeDetail(nodeId);
      for (let round = 0; round < 30 && !detail.visible; round++) {
        const anchor = await this.closestVisibleAncestor(nodeId);
        this.apply(await this.api.expand(anchor, 'descendants'));
        detail = await this.api.nodeDetail(nodeId);
      }
      if (!detail.visible) {
        this.notice(`could not reveal ${detail.label}`);
      } else {
        this.apply(await this.api.select(nodeId));
        this.centerOn(nodeId);
      }
    } catch (error) {
      this.notice(String(error));
    }
    this.byId('search-results').innerHTML = '';
  }

  private async closestVisibleAncestor(nodeId: string): Promise<string> {
    const seen = new Set<string>();
    let frontier = [nodeId];
    while (frontier.length) {
      const next: string[] = [];
      for (const id of frontier) {
        if (seen.has(id)) continue;
        seen.add(id);
        const detail = await this.api.nodeDetail(id);
        if (detail.visible && id !== nodeId) return id;
        next.push(...detail.parents.map((p) => p.id));
      }
      frontier = next;
    }
    throw new Error('no visible ancestor');
  }

  private centerOn(nodeId: string): void {
    const node = this.payload?.nodes.find((n) => n.id === nodeId);
    const holder = this.byId('scene');
    if (!node || typeof holder.scrollTo !== 'function') return;
    const zoom = (this.payload?.state.zoom ?? 1) * this.ui.zoom;
    holder.scrollTo({
      left: Math.max(0, node.geometry.x * zoom - holder.clientWidth / 2),
      top: Math.max(0, node.geometry.y * zoom - holder.clientHeight / 2),
    });
  }

  // ----- scene interaction

  private bindScene(): void {
    const scene = this.byId('scene');

    scene.addEventListener('click', (event) => {
      const target = (event.target as HTMLElement).closest('[data-action]');
      if (!target) return;
      const nodeId = target.getAttribute('data-node-id');
      const action = target.getAttribute('data-action');
      if (!nodeId || !action) return;
      this.dispatch(action, nodeId);
    });

    scene.addEventListener('contextmenu', (event) => {
      const target = (event.target as HTMLElement).closest('[data-node-id]');
      if (!target) return;
      event.preventDefault();
      const nodeId = target.getAttribute('data-node-id');
      if (nodeId) {
        this.openSlider(nodeId, (event as MouseEvent).clientX,
                        (event as MouseEvent).clientY);
      }
    });

    scene.addEventListener('mouseover', async (event) => {
      const target = (event.target as HTMLElement)
        .closest('g.node[data-node-id]');
      const nodeId = target?.getAttribute('data-node-id');
      if (!nodeId) return;
      try {
        const detail = await this.api.nodeDetail(nodeId);
        const tip = this.byId('tooltip');
        tip.innerHTML = renderTooltip(detail);
        tip.style.display = 'block';
      } catch {
        // tooltip is best-effort; a failed fetch just shows nothing
      }
    });
    scene.addEventListener('mouseout', () => {
      this.byId('tooltip').style.display = 'none';
    });
  }

  private dispatch(action: string, nodeId: string): void {
    const markers = this.payload?.nodes
      .find((n) => n.id === nodeId)?.markers;
    switch (action) {
      case 'expand-descendants':
        this.run(() => this.api.expand(nodeId, 'descendants'));
        break;
      case 'collapse-descendants':
        this.run(() => this.api.collapse(nodeId, 'descendants'));
        break;
      case 'expand-ancestors':
        this.run(() => this.api.expand(nodeId, 'ancestors'));
        break;
      case 'collapse-ancestors':
        this.run(() => this.api.collapse(nodeId, 'ancestors'));
        break;
      case 'toggle-disjoint':
        this.run(() => this.api.setMarkers(
          nodeId, { disjoint: !markers?.disjointDeployed }));
        break;
      case 'toggle-properties':
        this.run(() => this.api.setMarkers(
          nodeId, { properties: !markers?.propertiesDeployed }));
        break;
      case 'select':
        this.run(() => this.api.select(nodeId));
        break;
      default:
        break;
    }
  }

  private openSlider(nodeId: string, x: number, y: number): void {
    const menu = this.byId('context-menu');
    const node = this.payload?.nodes.find((n) => n.id === nodeId);
    const shown = node?.counters.visibleDescendants ?? 0;
    const total = node?.counters.totalDescendants ?? 0;
    const percent = total > 0 ? Math.round((100 * shown) / total) : 100;
    menu.innerHTML =
      `<div class="menu-title">${node ? node.label : nodeId}</div>` +
      `<label>visible descendants: <span id="slider-value">${percent}</span>%` +
      `</label>` +
      `<input id="slider-input" type="range" min="0" max="100"` +
      ` value="${percent}" data-node-id="${nodeId}">`;
    menu.style.display = 'block';
    menu.style.left = `${x}px`;
    menu.style.top = `${y}px`;

    const input = this.byId<HTMLInputElement>('slider-input');
    input.addEventListener('change', () => {
      this.run(() => this.api.slider(nodeId, Number(input.value)));
      menu.style.display = 'none';
    });
  }
}
