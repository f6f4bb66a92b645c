"""Write the reference graphs to corpus/*.json at a chosen level."""

import argparse
from pathlib import Path

from heistqft.corpus import corpus_graph, corpus_names

DEFAULT_LEVEL = {"two_circles": 2}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--level", type=int, default=None, help="level for every graph (default 2)")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in corpus_names(include_nonplanar=True):
        k = args.level if args.level is not None else DEFAULT_LEVEL.get(name, 2)
        graph = corpus_graph(name, k)
        (out / f"{name}.json").write_text(graph.to_json() + "\n")
        print(f"{name}: k={k} hash={graph.graph_hash()}")


if __name__ == "__main__":
    main()
