"""Smoke test for the quatcomm Python extension.

Build and install first, e.g.

    pip install maturin
    maturin develop --release -m crates/python/Cargo.toml

then run ``python python/smoke_test.py``.
"""

from fractions import Fraction
import math

import quatcomm
from quatcomm import Quaternion


def main():
    # float arithmetic: ij = k, ji = -k
    i, j, k = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)
    assert i * j == k and j * i == -k
    assert quatcomm.commutator(i, j) == Quaternion(0, 0, 0, 2)

    # exact mode keeps rationals
    a = Quaternion.parse("1/2+i-3k", mode="exact")
    b = Quaternion.exact(2, Fraction(1, 3), "-1", 0)
    assert a.mode == "exact"
    assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()
    assert (a * a.inverse()) == Quaternion.exact(1)
    assert a.components == [Fraction(1, 2), 1, 0, -3]

    # similarity of ab and ba, with an explicit witness
    ab, ba = a * b, b * a
    assert quatcomm.is_similar(ab, ba)
    s = quatcomm.similarity_witness(ab, ba)
    assert quatcomm.conjugate_by(ab, s) == ba

    # nested commutators agree with the closed form
    qs = [Quaternion.parse(t, mode="exact") for t in ("1+i", "2j-k", "3+i+j+k")]
    for order in ([1, 2, 3], [2, 3, 1], [3, 1, 2]):
        assert quatcomm.nested_commutator(qs, order) == quatcomm.flat_formula(qs, order)

    part = quatcomm.class_partition(qs)
    assert sorted(len(c["members"]) for c in part["classes"]) == [3, 3]

    # the sign claim fails for three factors
    e1, e2 = Quaternion.exact(0, 1), Quaternion.exact(0, 0, 1)
    e123 = Quaternion.exact(0, 1, 1, 1)
    assert quatcomm.verify_sign_claim([e1, e2, e123])["verdict"] == "REFUTED"

    # exponential: exp(πi) = -1
    e = quatcomm.qexp(Quaternion(0, math.pi))
    assert abs(e.re + 1) < 1e-15
    psi, dpsi = Quaternion(0.3, 0.5, -0.2, 0.1), Quaternion(0.1, 0.0, 0.7, 0.2)
    closed = quatcomm.qexp_derivative(psi, dpsi)
    h = 1e-5
    fd = quatcomm.qexp(psi + Quaternion(h) * dpsi) - quatcomm.qexp(psi - Quaternion(h) * dpsi)
    fd = Quaternion(1 / (2 * h)) * fd
    assert (closed - fd).to_float().norm() < 1e-8

    # harness reports come back as dicts
    assert "lemma3" in quatcomm.claims()
    report = quatcomm.run_harness("lemma3", trials=50, seed=7)
    assert report["verdict"] == "CONFIRMED", report
    again = quatcomm.run_harness("lemma3", trials=50, seed=7)
    assert report == again

    # mixing modes is an error
    try:
        Quaternion(1) * Quaternion.exact(1)
    except ValueError:
        pass
    else:
        raise AssertionError("mixed modes should fail")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
