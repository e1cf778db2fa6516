#!/usr/bin/env python3
"""Independent single-step oracle for the staggered scheme on a 5-cell grid.

Replays the documented update rules with plain NumPy (the implicit heat solve
uses a dense numpy.linalg.solve, independent of the production Thomas solve)
and prints the expected post-step state to 17 significant digits. The printed
values are frozen into the oracle check suite.
"""
import numpy as np

R, CV = 1.0, 1.5
DX = 0.25
DT = 0.01
N = 5


def initial_state():
    i = np.arange(N)
    j = np.arange(N + 1)
    tau = 1.0 + 0.1 * np.sin(0.7 * i + 0.3)
    theta = 1.0 + 0.07 * np.cos(1.1 * i + 0.2)
    v = 0.05 * np.sin(0.9 * j + 0.4)
    return tau, theta, v


def step(tau, theta, v, kappa, nu):
    dv_old = (v[1:] - v[:-1]) / DX
    p = R * theta / tau
    sigma = nu * dv_old / tau
    q = p - sigma

    v_new = v.copy()
    for jj in range(1, N):
        v_new[jj] = v[jj] - DT / DX * (q[jj] - q[jj - 1])

    dv_new = (v_new[1:] - v_new[:-1]) / DX
    tau_new = tau + DT * dv_new

    rhs = CV / DT * theta - theta * (R / tau) * dv_new + sigma * dv_new

    A = np.zeros((N, N))
    for ii in range(N):
        A[ii, ii] = CV / DT
    for jj in range(1, N):
        tau_e = 0.5 * (tau_new[jj - 1] + tau_new[jj])
        a = kappa / (DX * DX * tau_e)
        A[jj - 1, jj - 1] += a
        A[jj, jj] += a
        A[jj - 1, jj] -= a
        A[jj, jj - 1] -= a
    theta_new = np.linalg.solve(A, rhs)
    return tau_new, theta_new, v_new


def dump(label, arr):
    body = ", ".join(f"{x:.17g}" for x in arr)
    print(f"  {label} = {{{body}}};")


def main():
    tau, theta, v = initial_state()
    print("// generated by tests/oracle/gen_step_oracle.py")
    dump("tau0", tau)
    dump("theta0", theta)
    dump("v0", v)
    for name, kappa, nu in (("inviscid", 0.0, 0.0), ("dissipative", 0.02, 0.01)):
        t2, th2, v2 = step(tau.copy(), theta.copy(), v.copy(), kappa, nu)
        print(f"// case {name}: kappa={kappa} nu={nu} dt={DT} dx={DX}")
        dump(f"tau1_{name}", t2)
        dump(f"theta1_{name}", th2)
        dump(f"v1_{name}", v2)


if __name__ == "__main__":
    main()
