"""Smoke test for the hopf_galois extension module.

Build and install first, e.g.
    pip install --no-build-isolation ./crates/python
then run
    python python/smoke_test.py
"""

import hopf_galois as hg


def main() -> None:
    s3 = hg.Group("sym(3)")
    c6 = hg.Group("cyclic(6)")
    assert s3.order == 6 and len(c6) == 6
    assert not s3.is_abelian() and c6.is_abelian()
    assert s3.aut_order() == 6 and c6.hol_order() == 12

    r = hg.count_e(s3, c6)
    assert r["e"] == 3 and r["raw_count"] == 1, r
    assert hg.count_e(s3, s3)["e"] == 2
    assert hg.count_e(hg.Group("abelian(2,2)"), hg.Group("cyclic(4)"))["e"] == 3

    subs = hg.regular_subgroups(s3, s3)
    assert len(subs) == 2 and all(len(s) == 6 for s in subs)

    c2 = hg.Group.parse("gtab 1\n2\n0 1\n1 0\n")
    assert c2.is_isomorphic(hg.Group("cyclic(2)"))
    assert hg.Group.from_table(c2.table()).order == 2
    a5 = hg.Group.parse("pgen 1 table\n5\n(0 1 2 3 4)\n(0 1 2)\n")
    assert a5.order == 60 and a5.is_perfect()

    cls = hg.classify(hg.Group("cyclic(4)"))
    assert cls["counts"] == {"C4": 1, "V4": 1}, cls

    assert hg.schur("A6") == 6 and hg.schur("PSL3(4)") == 48
    checks = hg.cfsg(a5, "A5")
    assert all(v["verdict"] == "pass" for v in checks), checks

    verdicts = hg.verify("15,60")
    assert verdicts and all(v["verdict"] == "pass" for v in verdicts), verdicts

    try:
        hg.Group("nonsense(")
    except hg.HopfGaloisError:
        pass
    else:
        raise AssertionError("bad spec accepted")

    print(f"hopf_galois {hg.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
