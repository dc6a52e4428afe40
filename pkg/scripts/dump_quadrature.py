"""Print a symmetric Fourier rule and check its trigonometric moments.

Usage: python3 scripts/dump_quadrature.py GAMMA N
"""
import math
import sys

import numpy as np

from wiener.domain_maps import x_from_theta
from wiener.fourier_quad import weighted_fourier_rule


def main(gamma=1.0, N=7):
    rule = weighted_fourier_rule(gamma, N)
    print(f"# gamma = {gamma}, N = {N}, {'Radau' if N % 2 else 'Gauss'} based")
    print(f"{'n':>3} {'theta':>20} {'x':>20} {'Omega':>20} {'omega':>20}")
    for n, (th, W, w) in enumerate(zip(rule.theta, rule.Omega, rule.omega)):
        print(f"{n:>3} {th:20.15f} {x_from_theta(th):20.12g} {W:20.15f} {w:20.15f}")
    print(f"sum Omega = {rule.Omega.sum():.15f}")
    if float(gamma).is_integer():
        g = int(gamma)
        print("k   |rule moment - exact|")
        for k in range(N + 2):
            exact = 2 * math.pi * math.comb(2 * g, g + k) / 2 ** g if k <= g else 0.0
            err = abs(np.sum(rule.Omega * np.exp(1j * k * rule.theta)) - exact)
            print(f"{k:<3} {err:.2e}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(float(args[0]) if args else 1.0, int(args[1]) if len(args) > 1 else 7)
