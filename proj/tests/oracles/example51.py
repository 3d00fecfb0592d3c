"""Independent reference values for the three-variable instance in
instances/example51.json. Closed forms and dense grids only; nothing here
calls the C++ library. The printed numbers are frozen in tests/oracle_values.hpp.
"""
import math

import numpy as np
from scipy.optimize import minimize, minimize_scalar

R15 = math.sqrt(15.0)
K = (7.0 - R15) / R15
HF = np.array([[1.5, K / 4, 0], [K / 4, K / 2, 0], [0, 0, 0]])
HG = [np.array([[1, .5, 0], [.5, 1, 0], [0, 0, 0]]),
      np.array([[.25, .25, 0], [.25, .5, 0], [0, 0, 0]]),
      np.array([[.5, .25, 0], [.25, .5, 0], [0, 0, 0]])]


def unit(t):
    return np.array([math.cos(t), math.sin(t), 0.0])


def dd(u, v=None):
    v = u if v is None else v
    return np.array([v @ h @ u for h in HG])


def lam_dir(u):
    # argmax of <lambda, d2g(u,u)> over {(a, b, 1): a <= -sqrt(b^2 + 1)}
    d = dd(u)
    b = d[1] / math.sqrt(d[0] ** 2 - d[1] ** 2)
    return np.array([-math.sqrt(b * b + 1), b, 1.0])


def hess(lam):
    return HF + sum(lam[i] * HG[i] for i in range(3))


def rho(u, lam, v):
    # z ranges over a line; the infimum is explicit for this data
    b = dd(u, v)
    z2 = -(lam @ b) / lam[2]
    eta = b + np.array([0, 0, z2])
    return -lam[0] * (eta[1] ** 2 + eta[2] ** 2 - eta[0] ** 2)


def chi1_fun(t):
    u = unit(t)
    return u @ hess(lam_dir(u)) @ u


def chi3_fun(p):
    v, u = unit(p[0]), unit(p[1])
    lam = lam_dir(v)
    q0 = 0.5 * (v @ HG[0] @ v)
    return u @ hess(lam) @ u + rho(u, lam, v) / q0


def phi(x0, x1):
    a = x0 * x0 + x1 * x1 + x0 * x1
    b = 0.5 * x0 * x0 + x1 * x1 + x0 * x1
    qf = 0.25 * (3 * x0 * x0 + K * (x1 * x1 + x0 * x1))
    return qf + a / 4 - 0.5 * math.sqrt(a * a - b * b / 4)


def phi_hess_min(t, h=1e-4):
    x = np.array([math.cos(t), math.sin(t)])
    H = np.zeros((2, 2))
    for i in range(2):
        for j in range(2):
            ei, ej = np.eye(2)[i] * h, np.eye(2)[j] * h
            H[i, j] = (phi(*(x + ei + ej)) - phi(*(x + ei - ej)) - phi(*(x - ei + ej))
                       + phi(*(x - ei - ej))) / (4 * h * h)
    return np.linalg.eigvalsh(H)[0]


def main():
    lt = lam_dir(unit(0.0))
    print("lambda_tilde", repr(lt[0]), repr(lt[1]), "exact", -4 / R15, 1 / R15)
    print("rho((0,1,0), lambda_tilde, (1,0,0))", repr(rho(unit(math.pi / 2), lt, unit(0.0))),
          "exact", 1 / (15 * R15))
    print("form at lambda_tilde, u=(0,1,0)", repr(unit(math.pi / 2) @ hess(lt) @ unit(math.pi / 2)))

    ts = np.linspace(0, math.pi, 3601)
    t0 = ts[np.argmin([chi1_fun(t) for t in ts])]
    r = minimize_scalar(chi1_fun, bracket=(t0 - 1e-3, t0, t0 + 1e-3), tol=1e-14)
    print("chi1", repr(r.fun), "at angle", r.x)

    grid = [(p, t) for p in np.linspace(0, math.pi, 361) for t in np.linspace(0, math.pi, 361)]
    p0 = min(grid, key=chi3_fun)
    r = minimize(chi3_fun, p0, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-16})
    v, u = unit(r.x[0]), unit(r.x[1])
    print("chi3", repr(r.fun), "v angle", r.x[0], "u angle", r.x[1], "rho", rho(u, lam_dir(v), v))

    # Two-sided growth ratio A/B on the unit circle of the (x0, x1) plane
    ang = np.linspace(0, 2 * math.pi, 200001)
    a = np.cos(ang) ** 2 + np.sin(ang) ** 2 + np.cos(ang) * np.sin(ang)
    b = 0.5 * np.cos(ang) ** 2 + np.sin(ang) ** 2 + np.cos(ang) * np.sin(ang)
    ratio = a / b
    print("A/B range", ratio.min(), ratio.max(), "max at", ang[np.argmax(ratio)] % math.pi)

    ts = np.linspace(0, 2 * math.pi, 7201)
    t0 = ts[np.argmin([phi_hess_min(t) for t in ts])]
    r = minimize_scalar(phi_hess_min, bracket=(t0 - 1e-3, t0, t0 + 1e-3), tol=1e-12)
    print("reduced objective: min Hessian eigenvalue on circle", repr(r.fun), "at angle", r.x)
    print("reduced objective: min on circle", min(phi(math.cos(t), math.sin(t)) for t in ts))

    d1 = phi(1.0, 0.0)
    d2 = phi(math.sqrt(0.5), -math.sqrt(0.5))
    print("phi(d1)", repr(d1), "exact", 1 - R15 / 8, "phi(d2)", repr(d2), "ratio", d1 / d2)
    # tilted value along a ray d: min_r r^2 phi(d) - r <v, d> = -<v,d>^2 / (4 phi(d))
    print("tilted minima at v=(1,0): d1", -1 / (4 * d1), "d2", -0.5 / (4 * d2))


if __name__ == "__main__":
    main()
