"""Recompute the maximum-eigenvalue table of the phi stiffness matrix.

Usage: python3 scripts/reproduce_eig_table.py [--even auto|canonical|mirrored]
"""
import argparse
import time

from wiener.cli import table_eig


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--even", choices=["auto", "canonical", "mirrored"], default="auto")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rows = table_eig({"auto": None, "canonical": False, "mirrored": True}[args.even])
    print(f"{'s':>6} {'N':>5} {'computed':>10} {'published':>9} {'diff':>7}  ordering")
    for label, N, val, ref, diff, order in rows:
        flag = "" if diff <= 0.02 else "  <-- off"
        print(f"{label:>6} {N:>5} {val:10.4f} {ref:9.2f} {diff:7.4f}  {order}{flag}")
    print(f"max |diff| = {max(r[4] for r in rows):.4f}   ({time.perf_counter() - t0:.2f} s)")


if __name__ == "__main__":
    main()
