"""Smoke tests for the Python bindings. Runs standalone: python test_smoke.py"""

import os
import sys


def load_module():
    build_dir = os.environ.get("LCACALC_MODULE_DIR")
    if build_dir:
        sys.path.insert(0, build_dir)
    try:
        import _lcacalc as m
    except ImportError:
        import lcacalc as m
    return m


def main():
    m = load_module()

    assert m.dual("Q+C(12)") == "Sol+C(4)+C(3)"
    assert m.hom("Zp(3)", "Zp(3)") == "Zp(3)"
    assert m.ext("Pr(2)", "Zp(2)") == "Zp(2)"
    assert m.ext("Qp(5)", "Qp(5)") == "0"
    assert m.ext("T^w", "Z") == "Unresolved"
    assert m.ext_countable("Sol", "Q") == "Yes"
    assert m.ext_countable("SC(2)", "C(2)") == "No"

    assert m.member("Zp(2)+Q", "TDLCPAb") is True
    assert m.injective("R+T", "LCPAb") is True
    assert m.injective("T", "LH(LCPAb)") is False
    assert m.projective("Z", "LH(TDLCPAb)") is True

    rec = m.query(["ext", "T", "C(9)"])
    assert rec["value"] == "C(9)"
    assert rec["kind"] == "expr"
    assert any(c["id"].startswith("RULE-") or c["provenance"] == "PAPER"
               for c in rec["citations"])

    res = m.resolve("C(9)")
    assert res["lines"] == ["d0: Pr(3)", "d1: Pr(3)"]

    oracle = m.oracle_ext("C(4)+C(2)", "C(8)")
    assert oracle["value"] == "C(2)+C(4)"
    assert any("agree" in line for line in oracle["lines"])

    d = m.derive("ext", "Pr(3)", "Z")
    assert d["value"] == "Zp(3)"

    try:
        m.ext("bogus", "Z")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for a malformed expression")

    try:
        m.dual("T^w")
    except RuntimeError:
        pass
    else:
        raise AssertionError("expected RuntimeError for the unrepresentable dual")

    calc = m.Calculator(depth=2)
    assert calc.query(["hom", "Q", "Q"])["value"] == "Q"

    print("smoke: all assertions passed")


if __name__ == "__main__":
    main()
