"""
Relevance scoring and the HTTP API
==================================

Scores every class three ways, prints the leaders, then drives the
whole service in-process through its JSON endpoints. Run from the
repository root:

    python demos/summarize_and_serve.py
"""

from fastapi.testclient import TestClient

from ontoview.config import AppConfig
from ontoview.relevance import compute_scores
from ontoview.server import create_app
from ontoview.session import Engine

text = open("fixtures/pizza.ofn", encoding="utf-8").read()
bundle = Engine(AppConfig()).load_text(text)

# the three built-in scorers rank quite differently
for method in ("pagerank", "rdfrank", "kce"):
    scores = compute_scores(method, bundle.graph, bundle.taxonomy)
    top = sorted(scores, key=lambda n: -scores[n])[:5]
    names = ", ".join(bundle.graph.nodes[n].label for n in top)
    print(f"{method:9s} top 5: {names}")

# same engine, but over HTTP
client = TestClient(create_app(AppConfig()))
created = client.post("/sessions", json={"document": text}).json()
sid = created["sessionId"]
print("\nsession", sid, "timings",
      {k: round(v, 1) for k, v in created["timings"].items()})

# summarize to the twenty most central classes
graph = client.post(f"/sessions/{sid}/summarize",
                    json={"method": "pagerank", "n": 20}).json()
print("after summarize:", graph["counters"]["visibleNodes"], "of",
      graph["counters"]["totalNodes"], "nodes visible")

# find something by its annotation label and reveal its neighborhood
hit = client.get(f"/sessions/{sid}/search", params={"q": "four cheeses"})
match = hit.json()["matches"][0]
print("search hit:", match["label"], "(visible)" if match["visible"]
      else "(hidden)")
client.post(f"/sessions/{sid}/expand",
            json={"nodeId": match["id"], "direction": "ancestors"})

tooltip = client.get(f"/sessions/{sid}/node/{match['id']}").json()
print("parents:", ", ".join(p["label"] for p in tooltip["parents"]))

svg = client.get(f"/sessions/{sid}/export.svg")
print("SVG export:", len(svg.content), "bytes,",
      svg.headers["content-type"])
client.delete(f"/sessions/{sid}")
