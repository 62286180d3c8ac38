"""Node importance scoring and ontology summaries.

Three built-in scorers: directed PageRank over the isA structure
(child links to parent), its undirected variant, and a key-concept
score blending local density, leaf coverage and name simplicity. Scorers
are pluggable through a registry so summaries can rank by anything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .expressions import OWL_NOTHING, OWL_THING, Atomic, Nothing, Thing
from .graph import ANONYMOUS, OntoGraph
from .reasoner import Taxonomy


@dataclass(frozen=True)
class RelevanceSettings:
    damping: float = 0.85
    epsilon: float = 1e-10
    kce_density_weight: float = 0.4
    kce_coverage_weight: float = 0.4
    kce_simplicity_weight: float = 0.2


@dataclass(frozen=True)
class SummaryRequest:
    method: str
    n: int = 1
    custom_concepts: tuple[str, ...] = ()


def pagerank(graph: OntoGraph, directed: bool = True,
             damping: float = 0.85, epsilon: float = 1e-10) -> dict[str, float]:
    """Power iteration over isA links until the largest per-node change
    drops below epsilon; dangling mass is spread uniformly. Scores sum
    to 1. The undirected variant adds the reversed edges.
    """
    nodes = list(graph.nodes)
    n = len(nodes)
    if n == 0:
        return {}
    idx = {v: i for i, v in enumerate(nodes)}
    edges = {(idx[c], idx[p]) for c, p in graph.isa_edges}
    if not directed:
        edges |= {(b, a) for a, b in edges}
    out_deg = [0] * n
    incoming: list[list[int]] = [[] for _ in range(n)]
    for a, b in sorted(edges):
        out_deg[a] += 1
        incoming[b].append(a)
    dangling = [i for i in range(n) if out_deg[i] == 0]

    rank = [1.0 / n] * n
    while True:
        loose = sum(rank[i] for i in dangling)
        base = (1.0 - damping) / n + damping * loose / n
        fresh = [base + damping * sum(rank[j] / out_deg[j] for j in incoming[i])
                 for i in range(n)]
        if max(abs(fresh[i] - rank[i]) for i in range(n)) < epsilon:
            rank = fresh
            break
        rank = fresh
    return {v: rank[idx[v]] for v in nodes}


def rdfrank(graph: OntoGraph, damping: float = 0.85,
            epsilon: float = 1e-10) -> dict[str, float]:
    return pagerank(graph, directed=False, damping=damping, epsilon=epsilon)


_CAMEL = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z0-9]*|[a-z0-9]+")


def label_token_count(label: str) -> int:
    count = 0
    for part in re.split(r"[\s_\-.]+", label):
        count += len(_CAMEL.findall(part))
    return max(count, 1)


def kce_scores(graph: OntoGraph, taxonomy: Taxonomy,
               settings: RelevanceSettings | None = None) -> dict[str, float]:
    """Weighted blend for named nodes only: direct-subclass/property/instance
    density (normalized by the maximum), descendant-leaf coverage, and
    1 / label token count.
    """
    settings = settings or RelevanceSettings()
    named = [node for node in graph.nodes.values() if node.kind != ANONYMOUS]

    kids: dict[str, set[str]] = {
        rep: {c for c in children if c != OWL_NOTHING}
        for rep, children in taxonomy.children.items()
    }
    leaves = {rep for rep, children in kids.items()
              if not children and rep != OWL_NOTHING}

    def descendant_leaves(rep: str) -> int:
        seen: set[str] = set()
        stack = [rep]
        while stack:
            for child in kids.get(stack.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        hits = len(seen & leaves)
        return hits + (1 if rep in leaves else 0)

    raw_density = {}
    for node in named:
        rep = _node_rep(node)
        raw_density[node.id] = (len(kids.get(rep, ()))
                                + len(node.domain_of) + len(node.instances))
    max_density = max(raw_density.values(), default=0)

    total_leaves = max(len(leaves), 1)
    scores: dict[str, float] = {}
    for node in named:
        rep = _node_rep(node)
        density = raw_density[node.id] / max_density if max_density else 0.0
        coverage = descendant_leaves(rep) / total_leaves
        simplicity = 1.0 / label_token_count(node.label)
        scores[node.id] = (settings.kce_density_weight * density
                           + settings.kce_coverage_weight * coverage
                           + settings.kce_simplicity_weight * simplicity)
    return scores


def _node_rep(node) -> str:
    if isinstance(node.expression, Thing):
        return OWL_THING
    if isinstance(node.expression, Nothing):
        return OWL_NOTHING
    assert isinstance(node.expression, Atomic)
    return node.expression.iri


Scorer = Callable[[OntoGraph, Taxonomy, RelevanceSettings], "dict[str, float]"]

_SCORERS: dict[str, Scorer] = {}


def register_scorer(name: str, scorer: Scorer) -> None:
    _SCORERS[name] = scorer


def scorer_names() -> list[str]:
    return sorted(_SCORERS)


register_scorer("pagerank",
                lambda g, t, s: pagerank(g, True, s.damping, s.epsilon))
register_scorer("rdfrank",
                lambda g, t, s: pagerank(g, False, s.damping, s.epsilon))
register_scorer("kce", lambda g, t, s: kce_scores(g, t, s))


def compute_scores(method: str, graph: OntoGraph, taxonomy: Taxonomy,
                   settings: RelevanceSettings | None = None) -> dict[str, float]:
    scorer = _SCORERS.get(method)
    if scorer is None:
        raise ValueError(f"unknown relevance method {method!r}; "
                         f"available: {', '.join(scorer_names())}")
    return scorer(graph, taxonomy, settings or RelevanceSettings())


def summarize(graph: OntoGraph, request: SummaryRequest,
              scores: dict[str, float] | None = None) -> set[str]:
    """Node ids of the summary: the n best-scoring nodes plus every node
    tied with the n-th (n is a lower bound), plus Thing always. A custom
    request returns exactly the chosen concepts plus Thing.
    """
    thing_id = graph.thing_id
    if request.method == "custom":
        if not request.custom_concepts:
            raise ValueError("custom summary requires at least one concept")
        unknown = [c for c in request.custom_concepts if c not in graph.nodes]
        if unknown:
            raise KeyError(f"unknown node ids: {', '.join(sorted(unknown))}")
        chosen = set(request.custom_concepts)
        if thing_id in graph.nodes:
            chosen.add(thing_id)
        return chosen

    if scores is None:
        raise ValueError("scores are required for non-custom summaries")
    if request.n < 1:
        raise ValueError("summary size must be at least 1")
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    if request.n >= len(ranked):
        chosen = {node_id for node_id, _ in ranked}
    else:
        threshold = ranked[request.n - 1][1]
        chosen = {node_id for node_id, score in ranked if score >= threshold}
    if thing_id in graph.nodes:
        chosen.add(thing_id)
    return chosen
