"""Print brick dimensions from traces next to the closed formulas.

For each graph and even level: the Verlinde count, the two closed values,
and how many classes (characters or quadratic forms) take each dimension.
"""

import argparse
from collections import Counter

from heistqft.corpus import corpus_graph, corpus_names
from heistqft.verlinde import spectral_brick_dims


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, nargs="+", default=[0, 2, 4, 6, 8])
    ap.add_argument("--graphs", nargs="+", default=[n for n in corpus_names(include_nonplanar=True) if n != "two_circles"])
    args = ap.parse_args()
    for name in args.graphs:
        for k in args.levels:
            table = spectral_brick_dims(corpus_graph(name, k))
            spread = Counter((table.classes[lbl], d) for lbl, d in table.dims.items())
            cells = ", ".join(f"class {c}: {n} x {d}" for (c, d), n in sorted(spread.items()))
            flag = "ok" if table.consistent else "MISMATCH"
            print(f"{name:<16} k={k} g={table.genus} {table.kind:<9} total={table.total:<6} closed={table.closed}  {cells}  {flag}")


if __name__ == "__main__":
    main()
