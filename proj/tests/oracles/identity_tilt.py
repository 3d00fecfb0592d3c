"""Closed-form tilted solutions for instances/identity_ok.json.

With g the identity and f = |x|^2/2 + c.x, the tilted problem
min f(x) - <v, x> over the Lorentz cone is solved by x(v) = proj(v - c).
Prints the pairwise-ratio modulus over the cross pattern used by the harness.
"""
import itertools
import math

import numpy as np

C = np.array([1.0, -1.0, 0.0])


def proj(p):
    t, r = p[0], p[1:]
    nr = np.linalg.norm(r)
    if nr <= t:
        return p.copy()
    if nr <= -t:
        return np.zeros_like(p)
    a = 0.5 * (t + nr)
    return np.concatenate(([a], a * r / nr))


def cross(n, radius, k):
    dirs = [np.eye(n)[i] for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        dirs += [(np.eye(n)[i] + np.eye(n)[j]) / math.sqrt(2), (np.eye(n)[i] - np.eye(n)[j]) / math.sqrt(2)]
    pts = [np.zeros(n)]
    for d in dirs:
        for s in np.linspace(-radius, radius, k):
            if abs(s) > 0:
                pts.append(s * d)
    return pts


def modulus(radius, k=11):
    pts = cross(3, radius, k)
    xs = [proj(v - C) for v in pts]
    best = 0.0
    for a, b in itertools.combinations(range(len(pts)), 2):
        dv = np.linalg.norm(pts[a] - pts[b])
        if dv > 0:
            best = max(best, np.linalg.norm(xs[a] - xs[b]) / dv)
    return best


if __name__ == "__main__":
    print("x(0)", proj(-C))
    for r in (1e-3, 1e-4):
        print("modulus r_tilt", r, repr(modulus(r)))
