"""Abstract simplicial complexes on the ground set {1, ..., m}.

Complexes are stored by their maximal faces only (frozensets of 1-based
indices); faces are enumerated on demand.  The empty face always belongs
to the complex; when there are no maximal faces the complex is {emptyset}.
Vertices of [m] appearing in no face are ghost vertices and are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, List, Set, Tuple

from .errors import InputError, NotAFaceError

Face = FrozenSet[int]


def _prune_to_maximal(faces: Iterable[Face]) -> Tuple[Face, ...]:
    faces = set(faces)
    maximal = [f for f in faces if not any(f < g for g in faces)]
    return tuple(sorted(maximal, key=lambda f: (len(f), sorted(f))))


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    maximal_faces: Tuple[Face, ...]

    @staticmethod
    def create(m: int, maximal_faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        if m < 0:
            raise InputError("ground-set size must be nonnegative")
        faces = [frozenset(f) for f in maximal_faces]
        for f in faces:
            if any(not (1 <= i <= m) for i in f):
                raise InputError(f"face {sorted(f)} leaves the ground set [1..{m}]")
        faces = [f for f in faces if f]
        return SimplicialComplex(m, _prune_to_maximal(faces))

    def is_face(self, face: Iterable[int]) -> bool:
        I = frozenset(face)
        if any(not (1 <= i <= self.m) for i in I):
            raise InputError(f"face {sorted(I)} leaves the ground set [1..{self.m}]")
        if not I:
            return True
        return any(I <= f for f in self.maximal_faces)

    def faces(self) -> List[Face]:
        """All faces including the empty one, sorted by (size, lexicographic)."""
        seen: Set[Face] = {frozenset()}
        for f in self.maximal_faces:
            items = sorted(f)
            for r in range(1, len(items) + 1):
                for sub in combinations(items, r):
                    seen.add(frozenset(sub))
        return sorted(seen, key=lambda f: (len(f), sorted(f)))

    def vertices(self) -> Set[int]:
        out: Set[int] = set()
        for f in self.maximal_faces:
            out |= f
        return out

    def ghosts(self) -> Set[int]:
        return set(range(1, self.m + 1)) - self.vertices()

    def dimension(self) -> int:
        """Max face cardinality minus one; -1 for the complex {emptyset}."""
        if not self.maximal_faces:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    def to_spec(self) -> dict:
        return {
            "m": self.m,
            "maximal_faces": [sorted(f) for f in self.maximal_faces],
        }

    @staticmethod
    def from_spec(data: dict) -> "SimplicialComplex":
        try:
            return SimplicialComplex.create(int(data["m"]), data["maximal_faces"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad simplicial complex fragment: {exc}")


def full_subcomplex(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    """K_J: all faces of K contained in J, on the same ground set."""
    J = frozenset(J)
    if any(not (1 <= i <= K.m) for i in J):
        raise InputError("restriction set leaves the ground set")
    return SimplicialComplex(K.m, _prune_to_maximal(f & J for f in K.maximal_faces))


def link(K: SimplicialComplex, I: Iterable[int]) -> SimplicialComplex:
    """Faces J with J disjoint from I and J union I a face of K."""
    I = frozenset(I)
    if not K.is_face(I):
        raise NotAFaceError(f"{sorted(I)} is not a face")
    faces = [f - I for f in K.maximal_faces if I <= f]
    return SimplicialComplex(K.m, _prune_to_maximal(f for f in faces if f))


def nerve_complex(m: int, incidences: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Nerve of a facet cover: one input set of facet indices per vertex."""
    sets = [frozenset(v) for v in incidences]
    if not sets:
        raise InputError("nerve of an empty incidence list")
    return SimplicialComplex.create(m, sets)


def boundary_of_simplex(q: int, m: int) -> SimplicialComplex:
    """Boundary of the q-simplex on vertices 1..q+1, plus ghosts up to m."""
    if q < 0 or q + 1 > m:
        raise InputError("need 0 <= q and q+1 <= m")
    verts = range(1, q + 2)
    return SimplicialComplex.create(m, combinations(verts, q))


def empty_complex(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, ())


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; K2's vertices are shifted up by K1.m."""
    shift = K1.m
    f1 = list(K1.maximal_faces) or [frozenset()]
    f2 = [frozenset(i + shift for i in f) for f in K2.maximal_faces] or [frozenset()]
    faces = [a | b for a in f1 for b in f2]
    return SimplicialComplex(K1.m + K2.m, _prune_to_maximal(f for f in faces if f))
