"""
Loading an ontology and walking the class graph
===============================================

Parses the pizza fixture, classifies it, and drives the view the way a
UI would: start from a bare root, expand a few steps, then export what
is on screen. Run from the repository root:

    python demos/explore_pizza.py
"""

from dataclasses import replace

from ontoview.config import AppConfig
from ontoview.expressions import Atomic
from ontoview.session import Engine
from ontoview.svg import export_svg, layout_view
from ontoview.viewstate import expand, initial_state, visible_ratio

PIZZA = "http://ontoview.example/pizza#"

engine = Engine(AppConfig())
bundle = engine.load_text(open("fixtures/pizza.ofn", encoding="utf-8").read())

graph = bundle.graph
print(f"loaded {len(graph.nodes)} nodes "
      f"({sum(1 for n in graph.nodes.values() if n.kind == 'anonymous')}"
      " anonymous)")
for line in bundle.skips:
    print("  ", line)

# a subsumption the text never states directly
r = bundle.reasoner
print("AmericanHot below SpicyPizza:",
      r.is_subsumed(Atomic(PIZZA + "AmericanHot"), Atomic(PIZZA + "SpicyPizza")))

# start with only Thing on screen, then reveal step by step
state = initial_state(graph, step_percent=15.0, policy="general-first")
state = replace(state, visible=frozenset({graph.thing_id}))
for _ in range(4):
    state, revealed = expand(state, graph, graph.thing_id,
                             levels=bundle.levels)
    labels = sorted(graph.nodes[n].label for n in revealed)
    print(f"revealed {len(revealed):2d}:", ", ".join(labels[:6]),
          "..." if len(labels) > 6 else "")

shown, total = visible_ratio(state, graph, graph.thing_id)
print(f"visible {shown}/{total} descendants of Thing")

view = layout_view(graph, state, levels=bundle.levels)
svg = export_svg(state, graph, view)
with open("pizza-view.svg", "w", encoding="utf-8") as fh:
    fh.write(svg)
print("wrote pizza-view.svg,", len(svg), "bytes")
