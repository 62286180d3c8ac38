"""Shared engine state and per-client sessions.

A loaded document is parsed, classified and built exactly once per
(content hash, detail window) pair; sessions of the same document share
that read-only bundle.  Each session owns a ViewState and a lock, so
mutations on one session are serialized while distinct sessions proceed
independently.
"""

from __future__ import annotations

import hashlib
import threading
import time
import uuid
from dataclasses import dataclass, field, replace

from .axioms import Ontology
from .config import AppConfig
from .graph import DetailWindow, OntoGraph, build_graph
from .layout import assign_levels
from .owlfss import ParseError, PrefixTable, parse_document, serialize_expression
from .reasoner import Reasoner, Taxonomy
from .relevance import SummaryRequest, compute_scores, summarize
from .viewstate import (Markers, ViewState, annotation_labels, collapse,
                        derive_dashed, expand, initial_state, search, set_slider)


class DocumentError(ValueError):
    """The submitted document cannot be loaded; carries the parse errors."""

    def __init__(self, errors: list[ParseError]):
        super().__init__("; ".join(str(e) for e in errors) or "empty document")
        self.errors = errors


@dataclass
class EngineBundle:
    """Everything derived from one document under one detail window."""
    ontology: Ontology
    reasoner: Reasoner
    taxonomy: Taxonomy
    graph: OntoGraph
    levels: dict[str, int]
    extra_labels: dict[str, list[str]]
    skips: list[str]
    timings: dict[str, float]
    _scores: dict[str, dict[str, float]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def scores(self, method: str, settings) -> dict[str, float]:
        with self._lock:
            if method not in self._scores:
                self._scores[method] = compute_scores(
                    method, self.graph, self.taxonomy, settings)
            return self._scores[method]


def _window_key(window: DetailWindow) -> tuple[str, str]:
    table = PrefixTable()
    return (serialize_expression(window.upper, table),
            serialize_expression(window.lower, table))


class Engine:
    """Builds and caches engine bundles keyed by document content."""

    def __init__(self, config: AppConfig | None = None):
        self.config = config or AppConfig()
        self._bundles: dict[tuple[str, tuple[str, str]], EngineBundle] = {}
        self._lock = threading.Lock()

    def load_text(self, text: str, window: DetailWindow | None = None) -> EngineBundle:
        window = window or DetailWindow()
        key = (hashlib.sha256(text.encode()).hexdigest(), _window_key(window))
        with self._lock:
            cached = self._bundles.get(key)
        if cached is not None:
            return cached
        bundle = self._build(text, window)
        with self._lock:
            return self._bundles.setdefault(key, bundle)

    def _build(self, text: str, window: DetailWindow) -> EngineBundle:
        t0 = time.perf_counter()
        result = parse_document(text)
        t1 = time.perf_counter()
        if result.errors:
            raise DocumentError(result.errors)
        reasoner = Reasoner(result.ontology)
        taxonomy = reasoner.classify()   # raises on inconsistency
        t2 = time.perf_counter()
        graph = build_graph(result.ontology, reasoner, taxonomy, window)
        levels = assign_levels(list(graph.nodes), graph.isa_edges)
        t3 = time.perf_counter()
        return EngineBundle(
            ontology=result.ontology,
            reasoner=reasoner,
            taxonomy=taxonomy,
            graph=graph,
            levels=levels,
            extra_labels=annotation_labels(graph, result.ontology),
            skips=[str(s) for s in result.skips],
            timings={"parseMs": (t1 - t0) * 1e3,
                     "classifyMs": (t2 - t1) * 1e3,
                     "buildMs": (t3 - t2) * 1e3},
        )


class Session:
    """One client's view over a shared bundle.  Mutations take the lock."""

    def __init__(self, engine: Engine, text: str, bundle: EngineBundle):
        self.id = uuid.uuid4().hex
        self.engine = engine
        self.document_text = text
        self.bundle = bundle
        self.created_at = time.time()
        self.lock = threading.Lock()
        view = engine.config.view
        self.state = initial_state(bundle.graph, step_percent=view.step_percent,
                                   policy=view.policy)

    # ranking context for the active policy
    def _rank(self) -> dict[str, float]:
        return self.bundle.scores(self.engine.config.view.scorer,
                                  self.engine.config.relevance)

    def expand(self, node_id: str, direction: str = "descendants") -> tuple[str, ...]:
        with self.lock:
            self.state, revealed = expand(self.state, self.bundle.graph, node_id,
                                          direction, self._rank(), self.bundle.levels)
            return revealed

    def collapse(self, node_id: str, direction: str = "descendants") -> tuple[str, ...]:
        with self.lock:
            self.state, hidden = collapse(self.state, self.bundle.graph, node_id,
                                          direction, self._rank(), self.bundle.levels)
            return hidden

    def slider(self, node_id: str, percent: float) -> None:
        with self.lock:
            self.state = set_slider(self.state, self.bundle.graph, node_id,
                                    percent, self._rank(), self.bundle.levels)

    def set_policy(self, policy: str) -> None:
        with self.lock:
            self.state = replace(self.state, policy=policy)

    def set_step(self, step_percent: float) -> None:
        with self.lock:
            self.state = replace(self.state, step_percent=step_percent)

    def set_zoom(self, zoom: float) -> None:
        with self.lock:
            self.state = replace(self.state, zoom=zoom)

    def select(self, node_id: str | None) -> None:
        with self.lock:
            self.state = replace(self.state, selection=node_id)

    def set_markers(self, node_id: str, disjoint: bool | None,
                    properties: bool | None) -> None:
        with self.lock:
            markers = dict(self.state.deployed_markers)
            current = markers.get(node_id, Markers())
            markers[node_id] = Markers(
                disjoint=current.disjoint if disjoint is None else disjoint,
                properties=current.properties if properties is None else properties,
            )
            self.state = replace(self.state, deployed_markers=markers)

    def set_override(self, node_id: str, x: float, y: float) -> None:
        with self.lock:
            overrides = dict(self.state.position_overrides)
            overrides[node_id] = (x, y)
            self.state = replace(self.state, position_overrides=overrides)

    def summarize(self, method: str, n: int,
                  custom: tuple[str, ...] = ()) -> None:
        request = SummaryRequest(method=method, n=n, custom_concepts=custom)
        scores = None
        if method != "custom":
            scores = self.bundle.scores(method, self.engine.config.relevance)
        with self.lock:
            chosen = summarize(self.bundle.graph, request, scores)
            self.state = replace(self.state, visible=frozenset(chosen))

    def set_window(self, window: DetailWindow) -> None:
        """Rebuild the graph under a new detail window; keeps the dials,
        resets visibility to the new graph."""
        bundle = self.engine.load_text(self.document_text, window)
        with self.lock:
            self.bundle = bundle
            self.state = ViewState(
                visible=frozenset(bundle.graph.nodes),
                step_percent=self.state.step_percent,
                policy=self.state.policy,
                zoom=self.state.zoom,
                detail_window=window,
            )

    def search(self, query: str) -> list[str]:
        return search(self.bundle.graph, query, self.bundle.extra_labels)

    def dashed(self) -> set[tuple[str, str]]:
        return derive_dashed(self.state, self.bundle.graph)


class SessionStore:
    def __init__(self, engine: Engine):
        self.engine = engine
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, text: str) -> Session:
        bundle = self.engine.load_text(text)
        session = Session(self.engine, text, bundle)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            return self._sessions[session_id]

    def drop(self, session_id: str) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)
