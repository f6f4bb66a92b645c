"""Check the cocycle and involution conditions under both longitude sign rules.

The per-component rule multiplies (-1)^k once per cycle component; the
per-edge rule once per edge of the cycle. Prints one row per graph and level.
"""

import argparse

from heistqft.corpus import corpus_graph, corpus_names
from heistqft.heisenberg import verify_cocycle, verify_involution
from heistqft.skein import SIGN_RULES, delta_monomial


def rule(name):
    return lambda graph, lam, j: delta_monomial(graph, lam, j, sign_rule=name)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=5)
    args = ap.parse_args()
    print(f"{'graph':<16} k  " + "  ".join(f"{r:>20}" for r in SIGN_RULES))
    for name in corpus_names(include_nonplanar=True):
        if name == "two_circles":
            continue
        for k in range(1, args.max_level + 1):
            g = corpus_graph(name, k)
            cells = []
            for r in SIGN_RULES:
                coc = verify_cocycle(g, delta=rule(r)).passed
                inv = verify_involution(g, delta=rule(r)).passed
                cells.append(f"cocycle={'ok' if coc else 'FAIL'} inv={'ok' if inv else 'FAIL'}")
            print(f"{name:<16} {k}  " + "  ".join(f"{c:>20}" for c in cells))


if __name__ == "__main__":
    main()
