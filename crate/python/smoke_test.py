"""Smoke test for the intersective_py extension.

Build and install with `pip install --no-build-isolation -e crates/python`,
then run `python3 python/smoke_test.py`.
"""

from fractions import Fraction
import math

import intersective_py as ix


def main():
    z13 = ix.Group("Z13")
    assert (z13.order, z13.label) == (13, "Z13")
    qr = z13.set("qr")
    assert len(qr) == 7
    q = ix.quantities(qr)
    assert q["mode"] == "float"
    for key in ("lambda", "lambda_pm"):
        assert math.isclose(q[key], 13 ** -0.5, abs_tol=1e-6), (key, q[key])

    z4 = ix.Group("Z4")
    tiling = ix.StandardSet(z4, "list:0,1,3")
    q = ix.quantities(tiling)
    assert q["mode"] == "exact"
    assert all(q[k] == Fraction(1, 2) for k in ("delta", "lambda", "lambda_pm", "delta_bar"))
    assert ix.lambda_(tiling, "lambda_plus") == Fraction(1, 2)

    cube = ix.Group("Z2^3")
    a = cube.set("ball:1")
    c = a.complement()
    assert c.complement() == a
    assert a.union(c) == cube.set("full")
    assert a.intersection(c) == cube.set("zero")
    assert cube.set(a.spec()) == a
    for which, dual in [("lambda", "lambda"), ("lambda_minus", "lambda_plus"), ("lambda_pm", "lambda_pm")]:
        assert ix.lambda_(a, which) * ix.lambda_(c, dual) == Fraction(1, 8)

    result = ix.verify("basic", group="Z6", exhaustive=True)
    assert result["passed"] and result["observations"]["sets"] == "8"

    stats = ix.experiment("threshold23", "Z1001", 0.005, trials=200, seed=7)
    assert stats["passed"]
    assert 0.0 <= stats["metrics"]["frequency_at_least_3"] <= 1.0

    try:
        z4.set("list:0,1")
    except ix.IntersectiveError as e:
        assert "standard" in str(e).lower(), e
    else:
        raise AssertionError("non-standard list accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
