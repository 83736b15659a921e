"""Built-in example inputs, emitted by `mamlab fixtures <name>`.

The generic fixtures declare symbols whose values are 128-bit truncations
of square roots; the library treats them as algebraically independent by
contract (see the symbols module).  Enclosures are computed with exact
integer square roots, so fixture files are bit-reproducible.
"""

from __future__ import annotations

from math import isqrt
from typing import Dict, List

from .errors import InputError

_ONE_I = {"re": "0", "im": "1"}
_ONE = {"re": "1", "im": "0"}


def _sqrt_enclosure(k: int, bits: int = 128) -> List[str]:
    """[p/2^bits, (p+1)/2^bits] with p = floor(sqrt(k) * 2^bits)."""
    p = isqrt(k << (2 * bits))
    d = 1 << bits
    return [f"{p}/{d}", f"{p + 1}/{d}"]


def _simplex_fan(n: int) -> dict:
    vectors = []
    for i in range(n):
        vectors.append(["1" if j == i else "0" for j in range(n)])
    vectors.append(["-1"] * n)
    from itertools import combinations

    faces = [sorted(c) for c in combinations(range(1, n + 2), n)]
    return {
        "schema": 1,
        "symbols": [],
        "n": n,
        "vectors": vectors,
        "complex": {"m": n + 1, "maximal_faces": faces},
    }


def _hopf_complex(n: int) -> dict:
    from itertools import combinations

    verts = range(1, n + 2)
    return {
        "m": n + 2,
        "maximal_faces": [sorted(c) for c in combinations(verts, n)],
    }


def fixture(name: str) -> dict:
    builders = {
        "torus-1": _torus_1,
        "hopf-rational": _hopf_rational,
        "hopf-generic": _hopf_generic,
        "hopf-irr": _hopf_irr,
        "square": _square,
        "simplex-2": lambda: _simplex_fan(2),
        "simplex-3": lambda: _simplex_fan(3),
        "simplex-4": lambda: _simplex_fan(4),
        "simplex-n": lambda: _simplex_fan(2),
        "overlap": _overlap,
        "quadrant": _quadrant,
    }
    try:
        return builders[name]()
    except KeyError:
        raise InputError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(builders))}"
        ) from None


def fixture_names() -> List[str]:
    return [
        "torus-1",
        "hopf-rational",
        "hopf-generic",
        "hopf-irr",
        "square",
        "simplex-2",
        "simplex-3",
        "simplex-4",
        "simplex-n",
        "overlap",
        "quadrant",
    ]


def _torus_1() -> dict:
    # one-dimensional complex torus C/(Z + iZ): n = 0, psi column (i, 1)
    return {
        "schema": 1,
        "symbols": [],
        "n": 0,
        "vectors": [[], []],
        "complex": {"m": 2, "maximal_faces": []},
        "psi": [[_ONE_I], [_ONE]],
    }


def _hopf_rational() -> dict:
    # classical Hopf manifold with equal multipliers e^{-2 pi}
    return {
        "schema": 1,
        "symbols": [],
        "n": 2,
        "vectors": [["1", "0"], ["0", "1"], ["-1", "-1"], ["0", "0"]],
        "complex": _hopf_complex(2),
        "psi": [[_ONE_I], [_ONE_I], [_ONE_I], [_ONE]],
        "offsets": ["0", "0", "1", "1"],
    }


def _hopf_generic() -> dict:
    # four declared-independent symbols; kernel basis (s,u,1,0), (t,v,0,1)
    return {
        "schema": 1,
        "symbols": [
            {"name": "s", "enclosure": _sqrt_enclosure(2), "precision": 128},
            {"name": "t", "enclosure": _sqrt_enclosure(3), "precision": 128},
            {"name": "u", "enclosure": _sqrt_enclosure(5), "precision": 128},
            {"name": "v", "enclosure": _sqrt_enclosure(7), "precision": 128},
        ],
        "n": 2,
        "vectors": [
            ["1", "0"],
            ["0", "1"],
            ["0 - s", "0 - u"],
            ["0 - t", "0 - v"],
        ],
        "complex": _hopf_complex(2),
        "psi": [
            [{"re": "s", "im": "t"}],
            [{"re": "u", "im": "v"}],
            [_ONE],
            [_ONE_I],
        ],
    }


def _hopf_irr() -> dict:
    # two symbols; kernel basis (s,s,1,0), (t,t,0,1): a rational functional
    # vanishes on the kernel
    return {
        "schema": 1,
        "symbols": [
            {"name": "s", "enclosure": _sqrt_enclosure(2), "precision": 128},
            {"name": "t", "enclosure": _sqrt_enclosure(3), "precision": 128},
        ],
        "n": 2,
        "vectors": [
            ["1", "0"],
            ["0", "1"],
            ["0 - s", "0 - s"],
            ["0 - t", "0 - t"],
        ],
        "complex": _hopf_complex(2),
        "psi": [
            [{"re": "s", "im": "t"}],
            [{"re": "s", "im": "t"}],
            [_ONE],
            [_ONE_I],
        ],
    }


def _square() -> dict:
    return {
        "schema": 1,
        "symbols": [],
        "n": 2,
        "vectors": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"]],
        "complex": {"m": 4, "maximal_faces": [[1, 2], [2, 3], [3, 4], [4, 1]]},
        "psi": [[_ONE], [_ONE_I], [_ONE], [_ONE_I]],
        "offsets": ["1", "1", "1", "1"],
    }


def _overlap() -> dict:
    # cone over {1,3} sits inside the cone over {1,2}
    return {
        "schema": 1,
        "symbols": [],
        "n": 2,
        "vectors": [["1", "0"], ["0", "1"], ["1", "1"]],
        "complex": {"m": 3, "maximal_faces": [[1, 2], [1, 3]]},
    }


def _quadrant() -> dict:
    # a single maximal cone: valid fan, not complete
    return {
        "schema": 1,
        "symbols": [],
        "n": 2,
        "vectors": [["1", "0"], ["0", "1"]],
        "complex": {"m": 2, "maximal_faces": [[1, 2]]},
    }
