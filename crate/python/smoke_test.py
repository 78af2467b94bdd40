"""Smoke test for the pycircparikh extension module.

Build and install first:
    pip install maturin && maturin build -m crates/python/Cargo.toml --release
    pip install target/wheels/pycircparikh-*.whl
"""

from fractions import Fraction

import pycircparikh as cp


def main() -> None:
    assert cp.count_linear("bcbcc", "bc") == 5
    assert cp.count_linear("aabcbc", "abc") == 6
    assert cp.count_direct("[cabacb]", "abc") == 4
    assert cp.count_direct("[aaaaaa]", "aa") == 15
    assert cp.count_average("[abcabc]", "ab") == Fraction(7, 3)

    m = cp.matrix("bacbc")
    assert [[int(x) for x in row] for row in m.rows()] == [[1, 1, 1, 1], [0, 1, 2, 3], [0, 0, 1, 2], [0, 0, 0, 1]]
    assert (m @ m.inverse()) == cp.Matrix.identity(4)
    assert cp.Matrix.from_json(m.to_json()) == m

    circ = cp.matrix("cabacb", circular=True)
    assert circ.rows()[0] == [1, 2, 2, Fraction(4, 3)]
    assert circ.entry(0, 3) == Fraction(4, 3)

    assert cp.m_equivalent("abab", "bbaa", "a,b")
    assert not cp.m_equivalent("acb", "cab")
    assert cp.m_equivalent("aaaacbbc", "aaacbabc")
    assert cp.canonical("cabcab") == "[abcabc]"

    apps = cp.rule_applications("abacca")
    assert [a["result"] for a in apps if a["valid"]] == ["[aacabc]"]
    assert not any(a["valid"] for a in cp.rule_applications("aaaacbbc"))
    assert cp.closure_dot("abab") == 'graph rewrite {\n  n0 [label="[abab]"];\n}\n'

    passed, instances, failures = cp.verify("binary-closed-form", 10)
    assert passed and instances == 2046 and failures == []
    assert cp.search_minor(6) is None

    try:
        cp.count_linear("abd", "a")
    except ValueError as e:
        assert "`d`" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
