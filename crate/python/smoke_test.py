#!/usr/bin/env python3
"""Smoke test for the checker_py extension module.

Builds are picked up from the cargo target directory; run

    cargo build --release -p checker-py
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libchecker_py.so", "checker_py.so", "libchecker_py.dylib")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("build the bindings first: cargo build --release -p checker-py")
    tmp = tempfile.mkdtemp(prefix="checker_py_")
    shutil.copy(built, pathlib.Path(tmp) / "checker_py.so")
    sys.path.insert(0, tmp)
    import checker_py

    return checker_py


def main():
    m = load_module()

    # Parsing and the trefoil coincidence.
    assert m.parse_word("n=4; 1 1") == (4, [1, 1])
    g1 = m.Graph.from_braid("1 1 1")
    g2 = m.Graph.from_braid("1 2 1 2")
    assert g1.vertex_count() == 2 and g1.edge_count() == 1
    assert g1.canonical_code() == g2.canonical_code()
    assert g1.is_valid()

    # Exact invariants of the positive trefoil.
    inv = g1.invariants()
    assert inv["alexander"] == {"offset": 0, "coeffs": [1, -1, 1]}
    assert inv["signature"] == 2
    assert inv["determinant"] == 3
    assert inv["genus"] == 1 and inv["components"] == 1

    # Pipeline and Burau oracle agree.
    assert m.oracle_alexander("1 1 1") == (0, [1, -1, 1])
    assert m.oracle_alexander("1 1 1 1 1 1 1") == (0, [1, -1, 1, -1, 1, -1, 1])
    assert m.oracle_components("1 1") == 2
    assert m.oracle_genus("1 1 1") == (2, 1)

    # Torus words share their polynomial.
    std, alt = m.torus_words(3, 4)
    assert m.oracle_alexander(std) == m.oracle_alexander(alt)

    # Surfaces, twist orders, destabilization.
    s = g1.surface()
    assert (s["euler"], s["boundary"], s["betti1"], s["genus"]) == (-1, 1, 2, 1)
    assert g1.twist_order() == [1, 2]
    assert g1.destabilization() == [1, 2]

    # Graph moves and serialization.
    star = m.Graph.from_braid("2 2 1 3 2 2 1 3")
    assert len(star.mutants(3)) == 6
    flipped = star.reverse_bridge(1)
    assert flipped.is_valid()
    back = m.Graph.from_json(star.to_json())
    assert back.canonical_code() == star.canonical_code()
    assert "digraph" in star.to_dot()

    # Mirror identification.
    tri = m.Graph.from_braid("1 2 1 2 1")
    assert tri.canonical_code(oriented=True, mirror=True) == tri.mirror().canonical_code(
        oriented=True, mirror=True
    )

    # Canonical words and a tiny census.
    assert m.canonical_word([2, 1, 2, 1]) == [1, 2, 1, 2]
    result = m.run_census(1, jobs=1)
    assert result["classes_per_genus"] == {"1": 1} or result["classes_per_genus"] == {1: 1}
    words = [r["word"] for r in result["records"]]
    assert "1 1 1" in words

    print("smoke test: all checks passed")
    print(json.dumps(inv, sort_keys=True))


if __name__ == "__main__":
    main()
