"""Smoke tests for the python bindings (run by ctest with PYTHONPATH set)."""

import math
import sys


def approx(a, b, rel=1e-9, abs_tol=0.0):
    return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_tol)


def main():
    import convdiff

    # Layer ratio endpoints.
    assert convdiff.layer_ratio(0.0, 1e-3) == 0.0
    assert convdiff.layer_ratio(1.0, 1e-3) == 1.0

    # Exact solution of -eps u'' + u' = 1 is x - r(x).
    x, eps = 0.5, 0.1
    assert approx(convdiff.exact_u("1", eps, x), x - convdiff.layer_ratio(x, eps))

    # Reduced solutions for f = 2x.
    assert approx(convdiff.reduced_w("2x", 0.7), 0.49)
    assert approx(convdiff.reduced_theta("2x", 0.7), 0.49 - 1.0)

    # Closed-form residual gate.
    assert convdiff.max_residual("2x", 1e-8) <= 3e-9

    # Oscillation pattern of the linear method: even nodes near x, odd near
    # x-1. The eps/h-scale transient shrinks with eps.
    for eps, tol in ((1e-6, 2.5e-2), (1e-8, 1e-3)):
        nodal = convdiff.solve("linear", "1", eps, 101)
        assert len(nodal) == 102
        for j in range(1, 101):
            want = j / 101.0 if j % 2 == 0 else j / 101.0 - 1.0
            assert abs(nodal[j] - want) < tol, (eps, j, nodal[j], want)

    # PG beats SD in the discrete optimal norm at a coarse level (f = 2x).
    e_pg = convdiff.error("pg", "2x", 1e-8, 128, "opt-h", exclude_right=0.01)
    e_sd = convdiff.error("sd", "2x", 1e-8, 128, "opt-h", exclude_right=0.01)
    assert e_pg < e_sd

    # Convergence harness returns orders near 1 for the linear method in H1.
    report = convdiff.converge("linear", "1-2x", 1e-6, "h1", level_lo=1, level_hi=3)
    assert report["levels"] == [1, 2, 3]
    assert all(abs(o - 1.0) < 0.2 for o in report["orders"][1:])

    # Figure export carries overlays.
    fig = convdiff.figure("spls", "1", 1e-6, 101, samples=16)
    assert len(fig["x"]) == len(fig["u_h"]) == len(fig["w"])
    mid = len(fig["x"]) // 2
    assert abs(fig["u_h"][mid] - (fig["x"][mid] - 0.5)) < 5e-2

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
