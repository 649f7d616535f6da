"""Smoke test for the pystatespace extension module."""

import json
from fractions import Fraction

import pystatespace as ss


def frac(xs):
    return [Fraction(x) for x in xs]


def main():
    square = ss.Polytope.generate("cube(2)")
    assert square.dim == 2 and len(square) == 4
    assert square.automorphism_order() == 8
    assert square.is_vertex_transitive()
    assert square.distinguishable([[1, 1], [-1, -1]])
    assert not square.distinguishable([[1, 1], [-1, 1], [-1, -1]])
    assert square.hyperplane_witness_verified([[1, 1], [-1, -1]])
    k, sets = square.max_distinguishable()
    assert k == 2 and len(sets) == 6
    assert square.decompose([Fraction(1, 2), Fraction(1, 4)]) is None
    assert square.locate([0, 0]) == "interior"
    assert square.classify() == "VertexTransitivePolytope"

    triangle = ss.Polytope([[0, 0], [1, 0], [0, 1], ["1/4", "1/4"]])
    assert len(triangle) == 3
    terms = triangle.decompose([Fraction(1, 3), Fraction(1, 3)])
    assert [Fraction(w) for _, w in terms] == [Fraction(1, 3)] * 3
    point, unique, interior = triangle.fixed_point()
    assert frac(point) == [Fraction(1, 3)] * 2 and unique and interior
    assert triangle.classify() == "Simplex(2)"

    rect = ss.Polytope.generate("box(1,2)")
    gram, invariant = rect.invariant_gram()
    assert invariant
    assert [frac(r) for r in gram] == [[Fraction(5, 2), 0], [0, Fraction(5, 8)]]

    report = json.loads(square.analyze(trials=20, seed=3))
    assert report["group_order"] == 8
    assert report["decomposability"]["seed"] == 3

    assert ss.ball_distinguishable(3, [[1, 0, 0], [-1, 0, 0]])
    assert not ss.ball_distinguishable(3, [[1, 0, 0], [0, 1, 0]])
    assert ss.ball_decompose(3, [0.5, 0, 0]) == [([1.0, 0.0, 0.0], 0.75), ([-1.0, 0.0, 0.0], 0.25)]
    assert ss.cylinder_decompose([0, 0, 0.25]) is None
    assert ss.cylinder_distinguishable([[1, 0, 1], [-1, 0, 1]])

    try:
        square.distinguishable([[3, 0]])
    except ValueError as e:
        assert "not in set" in str(e)
    else:
        raise AssertionError("expected ValueError")

    passed, text = ss.verify_default_corpus(trials=20, seed=1)
    assert passed, text
    print("pystatespace smoke test passed")


if __name__ == "__main__":
    main()
