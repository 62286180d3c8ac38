"""JSON service over the engine.

Error taxonomy: 404 for unknown sessions and nodes, 400 for malformed
bodies and invalid windows or parameters, 422 for documents that fail to
parse (response carries the parse error list) or are inconsistent.
Every mutation responds with the full visible-graph payload so clients
never need to reconcile increments.
"""

from __future__ import annotations

import os

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from . import __version__
from .config import AppConfig, load_config
from .expressions import local_name
from .graph import DetailWindow, WindowError
from .layout import LayoutConfig
from .owlfss import PrefixTable, parse_class_expression, serialize_expression
from .reasoner import InconsistentOntologyError
from .relevance import scorer_names
from .session import DocumentError, Engine, Session, SessionStore
from .svg import export_dot, export_svg, layout_view
from .viewstate import POLICIES, ViewDocumentError, load_view, save_view

_PREFIXES = PrefixTable()


class ApiError(Exception):
    def __init__(self, status: int, detail: str, **extra):
        super().__init__(detail)
        self.status = status
        self.payload = {"detail": detail, **extra}


def _require(body: dict, key: str):
    if key not in body:
        raise ApiError(400, f"missing field {key!r}")
    return body[key]


def _layout_config(config: AppConfig) -> LayoutConfig:
    return LayoutConfig(sweeps=config.layout.sweeps)


def graph_payload(session: Session, config: AppConfig) -> dict:
    """Snapshot of everything a client needs to draw the current view."""
    state = session.state
    graph = session.bundle.graph
    levels = session.bundle.levels
    view_layout = layout_view(graph, state, _layout_config(config), levels)
    geometry = view_layout.layout.geometry

    def rect_of(node_id: str) -> dict:
        rect = geometry[node_id]
        x, y = state.position_overrides.get(node_id, (rect.x, rect.y))
        return {"x": round(x, 2), "y": round(y, 2),
                "width": round(rect.width, 2), "height": round(rect.height, 2)}

    nodes = []
    for node_id, node in graph.nodes.items():
        if node_id not in state.visible:
            continue
        markers = state.deployed_markers.get(node_id)
        shown = len(graph.descendants_of(node_id) & state.visible)
        nodes.append({
            "id": node_id,
            "kind": node.kind,
            "label": node.label,
            "equivalents": list(node.equivalents),
            "members": [local_name(m) for m in node.members],
            "level": levels[node_id],
            "geometry": rect_of(node_id),
            "counters": {"visibleDescendants": shown,
                         "totalDescendants": node.total_descendants},
            "markers": {
                "hasDisjoint": any(node_id in pair for pair in graph.disjoint_pairs),
                "hasProperties": bool(node.domain_of),
                "disjointDeployed": bool(markers and markers.disjoint),
                "propertiesDeployed": bool(markers and markers.properties),
            },
            "parents": list(node.parents),
            "children": list(node.children),
            "properties": [_descriptor_payload(d, graph) for d in node.domain_of],
            "instances": [local_name(i) for i in node.instances],
        })

    def edge(child: str, parent: str) -> dict:
        waypoints = view_layout.layout.edge_waypoints.get((child, parent), [])
        return {"child": child, "parent": parent,
                "waypoints": [[round(x, 2), round(y, 2)]
                              for x, y in reversed(waypoints)]}

    visible = state.visible
    return {
        "nodes": nodes,
        "edges": {
            "isa": [edge(a, b) for a, b in view_layout.solid_edges],
            "dashed": [edge(a, b) for a, b in view_layout.dashed_edges],
            "range": [{"carrier": c, "property": p, "target": t}
                      for c, p, t in sorted(graph.range_edges)
                      if c in visible and t in visible],
            "subproperty": [{"sub": a, "sup": b, "subName": local_name(a),
                             "supName": local_name(b)}
                            for a, b in sorted(graph.sub_property_edges)],
            "disjoint": [{"a": a, "b": b}
                         for a, b in sorted(graph.disjoint_pairs)
                         if a in visible and b in visible],
        },
        "state": {
            "policy": state.policy,
            "stepPercent": state.step_percent,
            "zoom": state.zoom,
            "selection": state.selection,
            "detailWindow": {
                "upper": serialize_expression(state.detail_window.upper, _PREFIXES),
                "lower": serialize_expression(state.detail_window.lower, _PREFIXES),
            },
        },
        "counters": {"visibleNodes": len(nodes), "totalNodes": len(graph.nodes)},
    }


def _descriptor_payload(desc, graph) -> dict:
    return {
        "iri": desc.iri,
        "name": local_name(desc.iri),
        "isData": desc.is_data,
        "rangeNodeIds": list(desc.range_node_ids),
        "rangeDatatypes": list(desc.range_datatypes),
        "characteristics": {
            "functional": desc.characteristics.functional,
            "transitive": desc.characteristics.transitive,
            "inverseOf": [local_name(i) for i in desc.characteristics.inverse_of],
        },
        "superProperties": [local_name(p) for p in desc.super_properties],
        "approximate": desc.approximate,
    }


def create_app(config: AppConfig | None = None) -> FastAPI:
    config = config or load_config()
    engine = Engine(config)
    store = SessionStore(engine)
    app = FastAPI(title="ontoview", version=__version__, docs_url="/docs")

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(exc.payload, status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    async def _bad_body(_request: Request, exc: RequestValidationError):
        return JSONResponse({"detail": "malformed request body"}, status_code=400)

    def get_session(session_id: str) -> Session:
        try:
            return store.get(session_id)
        except KeyError:
            raise ApiError(404, f"unknown session {session_id}") from None

    def require_node(session: Session, node_id: str) -> str:
        if node_id not in session.bundle.graph.nodes:
            raise ApiError(404, f"unknown node {node_id}")
        return node_id

    @app.get("/")
    def root():
        return {"service": "ontoview", "version": __version__,
                "scorers": scorer_names(), "policies": list(POLICIES)}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        if "document" in body:
            text = body["document"]
            if not isinstance(text, str):
                raise ApiError(400, "document must be a string")
        elif "path" in body:
            try:
                with open(body["path"], encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ApiError(400, f"cannot read path: {exc}") from None
        else:
            raise ApiError(400, "body must contain 'document' or 'path'")
        try:
            session = store.create(text)
        except DocumentError as exc:
            raise ApiError(422, "document failed to parse", errors=[
                {"line": e.line, "column": e.column, "message": e.message}
                for e in exc.errors]) from None
        except InconsistentOntologyError as exc:
            raise ApiError(422, f"ontology is inconsistent: {exc}") from None
        return {"sessionId": session.id,
                "timings": session.bundle.timings,
                "skips": session.bundle.skips,
                "graph": graph_payload(session, config)}

    @app.get("/sessions/{session_id}/graph")
    def get_graph(session_id: str):
        return graph_payload(get_session(session_id), config)

    @app.post("/sessions/{session_id}/expand")
    def post_expand(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        node_id = require_node(session, _require(body, "nodeId"))
        direction = body.get("direction", "descendants")
        if direction not in ("descendants", "ancestors"):
            raise ApiError(400, f"unknown direction {direction!r}")
        revealed = session.expand(node_id, direction)
        return {"revealed": list(revealed), **graph_payload(session, config)}

    @app.post("/sessions/{session_id}/collapse")
    def post_collapse(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        node_id = require_node(session, _require(body, "nodeId"))
        direction = body.get("direction", "descendants")
        if direction not in ("descendants", "ancestors"):
            raise ApiError(400, f"unknown direction {direction!r}")
        hidden = session.collapse(node_id, direction)
        return {"hidden": list(hidden), **graph_payload(session, config)}

    @app.post("/sessions/{session_id}/slider")
    def post_slider(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        node_id = require_node(session, _require(body, "nodeId"))
        percent = _require(body, "percent")
        if not isinstance(percent, (int, float)) or not 0 <= percent <= 100:
            raise ApiError(400, "percent must be a number in [0, 100]")
        session.slider(node_id, float(percent))
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/policy")
    def post_policy(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        policy = _require(body, "policy")
        if policy not in POLICIES:
            raise ApiError(400, f"unknown policy {policy!r}")
        session.set_policy(policy)
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/step")
    def post_step(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        step = _require(body, "stepPercent")
        if not isinstance(step, (int, float)) or not 0 < step <= 100:
            raise ApiError(400, "stepPercent must be a number in (0, 100]")
        session.set_step(float(step))
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/zoom")
    def post_zoom(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        zoom = _require(body, "zoom")
        if not isinstance(zoom, (int, float)) or zoom <= 0:
            raise ApiError(400, "zoom must be a positive number")
        session.set_zoom(float(zoom))
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/detail-window")
    def post_window(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        try:
            window = DetailWindow(
                upper=parse_class_expression(_require(body, "upper")),
                lower=parse_class_expression(_require(body, "lower")))
        except ValueError as exc:
            raise ApiError(400, f"bad class expression: {exc}") from None
        try:
            session.set_window(window)
        except WindowError as exc:
            raise ApiError(400, str(exc)) from None
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/summarize")
    def post_summarize(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        method = _require(body, "method")
        n = body.get("n", 1)
        custom = tuple(body.get("customConcepts", ()))
        if method != "custom" and method not in scorer_names():
            raise ApiError(400, f"unknown method {method!r}")
        if not isinstance(n, int) or n < 1:
            raise ApiError(400, "n must be a positive integer")
        try:
            session.summarize(method, n, custom)
        except KeyError as exc:
            raise ApiError(404, f"unknown node {exc.args[0]}") from None
        except ValueError as exc:
            raise ApiError(400, str(exc)) from None
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/select")
    def post_select(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        node_id = body.get("nodeId")
        if node_id is not None:
            require_node(session, node_id)
        session.select(node_id)
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/markers")
    def post_markers(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        node_id = require_node(session, _require(body, "nodeId"))
        session.set_markers(node_id, body.get("disjoint"), body.get("properties"))
        return graph_payload(session, config)

    @app.post("/sessions/{session_id}/position")
    def post_position(session_id: str, body: dict = Body(...)):
        session = get_session(session_id)
        node_id = require_node(session, _require(body, "nodeId"))
        x, y = _require(body, "x"), _require(body, "y")
        if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
            raise ApiError(400, "x and y must be numbers")
        session.set_override(node_id, float(x), float(y))
        return graph_payload(session, config)

    @app.get("/sessions/{session_id}/search")
    def get_search(session_id: str, q: str = ""):
        session = get_session(session_id)
        if not q:
            return {"matches": []}
        graph = session.bundle.graph
        return {"matches": [
            {"id": node_id, "label": graph.nodes[node_id].label,
             "visible": node_id in session.state.visible}
            for node_id in session.search(q)]}

    @app.get("/sessions/{session_id}/export.svg")
    def get_svg(session_id: str):
        session = get_session(session_id)
        view_layout = layout_view(session.bundle.graph, session.state,
                                  _layout_config(config), session.bundle.levels)
        doc = export_svg(session.state, session.bundle.graph, view_layout)
        return Response(doc, media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/export.dot")
    def get_dot(session_id: str):
        session = get_session(session_id)
        return PlainTextResponse(export_dot(session.bundle.graph, session.state),
                                 media_type="text/vnd.graphviz")

    @app.get("/sessions/{session_id}/node/{node_id}")
    def get_node(session_id: str, node_id: str):
        session = get_session(session_id)
        require_node(session, node_id)
        graph = session.bundle.graph
        node = graph.nodes[node_id]
        partners = sorted({b if a == node_id else a
                           for a, b in graph.disjoint_pairs if node_id in (a, b)})
        return {
            "id": node_id,
            "kind": node.kind,
            "label": node.label,
            "visible": node_id in session.state.visible,
            "members": [local_name(m) for m in node.members],
            "equivalents": list(node.equivalents),
            "parents": [{"id": p, "label": graph.nodes[p].label}
                        for p in node.parents],
            "children": [{"id": c, "label": graph.nodes[c].label}
                         for c in node.children],
            "disjointWith": [{"id": p, "label": graph.nodes[p].label}
                             for p in partners],
            "properties": [_descriptor_payload(d, graph) for d in node.domain_of],
            "instances": [local_name(i) for i in node.instances],
            "counters": {"totalDescendants": node.total_descendants},
        }

    @app.get("/sessions/{session_id}/view.ontview")
    def get_view(session_id: str):
        session = get_session(session_id)
        return PlainTextResponse(save_view(session.state),
                                 media_type="text/plain")

    @app.put("/sessions/{session_id}/view.ontview")
    async def put_view(session_id: str, request: Request):
        session = get_session(session_id)
        text = (await request.body()).decode("utf-8", errors="replace")
        try:
            state = load_view(text, session.bundle.graph)
        except ViewDocumentError as exc:
            raise ApiError(400, str(exc)) from None
        with session.lock:
            session.state = state
        return graph_payload(session, config)

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        get_session(session_id)
        store.drop(session_id)
        return Response(status_code=204)

    static_dir = config.server.static_dir
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
