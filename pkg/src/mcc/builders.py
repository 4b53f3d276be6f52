"""Construction algorithms for the cell decompositions.

Telephone sweep (both families): label each characteristic angle of each
primitive component with the necklace of its landing cycle, then walk the
circle counterclockwise from 0.  Whenever the angle under the cursor carries
the active necklace, record that component as the next edge of the current
face, make the partner angle's necklace active, and resume strictly past the
pair's higher angle.  A face closes when its first directed edge comes around
again.  Sweeps are started from every necklace in canonical order; a start
whose first match was already consumed would only re-trace an existing face
and is skipped, so each face is built exactly once.

Bar method (polynomial family only): each primitive component contributes one
polygon side to the face of each perturbation class of its kneading sequence,
sides ordered barred-then-unbarred ascending by label.  Reflexive faces have
no natural side order that chains through vertices, so their boundary is
re-threaded as a deterministic Euler circuit with all externally-forced
directions respected; the equivalence with the telephone output is then only
up to boundary multiset on those faces.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .angles import binary_cycle
from .cellcomplex import CellComplex, Edge, Face, Vertex, validate
from .components import HyperbolicComponent, odd_label, primitive_components
from .counting import Family
from .cycles import (
    CycleClass,
    basilica_label,
    duo,
    enumerate_binary,
    enumerate_ternary,
    least_rotation,
    perturbations,
    ternary_necklace,
    trio,
)

_MAX_BUILD_PERIOD = 20


class BuildError(RuntimeError):
    """A construction invariant failed; the complex cannot be assembled."""


@dataclass(frozen=True)
class EdgeEvent:
    """One characteristic angle of one component, as seen by the sweep."""

    position: Fraction
    index: int  # component index in the sorted primitive list
    side: int  # 0 = low angle, 1 = high angle
    component: HyperbolicComponent
    side_labels: tuple[str, str]  # necklace words at (low, high)


def _check_build_period(family: Family, p: int) -> None:
    if family is Family.PER2 and p in (1, 2):
        raise ValueError(
            f"p={p} is degenerate for the critical-2-cycle family: the marked "
            "curve is the parameter space itself and has no edge data; see the "
            "counting module for its cell counts"
        )
    if p < 3:
        raise ValueError(f"builders require p >= 3, got {p}")
    if p > _MAX_BUILD_PERIOD:
        raise ValueError(f"build budget is p <= {_MAX_BUILD_PERIOD}, got {p}")


def _side_words(family: Family, comp: HyperbolicComponent) -> tuple[str, str]:
    if family is Family.PER1:
        return (
            least_rotation(binary_cycle(comp.low)),
            least_rotation(binary_cycle(comp.high)),
        )
    return (basilica_label(comp.low).word, basilica_label(comp.high).word)


def _edge_label(family: Family, comp: HyperbolicComponent) -> int:
    return comp.label if family is Family.PER1 else odd_label(comp)


def _vertex_classes(family: Family, p: int):
    if family is Family.PER1:
        necklaces = enumerate_binary(p)
        classes = {duo(nu) for nu in necklaces}
    else:
        necklaces = enumerate_ternary(p)
        classes = {trio(xi) for xi in necklaces}
    return [nu.word for nu in necklaces], sorted(classes)


def _assemble(
    family: Family,
    p: int,
    comps: tuple[HyperbolicComponent, ...],
    face_specs: list[tuple[CycleClass, list[tuple[int, int]]]],
    meta: tuple[tuple[str, str], ...] = (),
) -> CellComplex:
    """Build and validate the complex from per-face directed side lists.

    ``face_specs`` items are (class, [(component index, tail side)]), where
    tail side 0 means the traversal starts at the low-angle endpoint.
    """
    words, _ = _vertex_classes(family, p)
    vid = {w: i for i, w in enumerate(words)}
    vertices = tuple(Vertex(i, w) for i, w in enumerate(words))

    edges = []
    for i, comp in enumerate(comps):
        lo_word, hi_word = _side_words(family, comp)
        edges.append(
            Edge(
                id=i,
                label=_edge_label(family, comp),
                component=comp,
                endpoints=(vid[lo_word], vid[hi_word]),
            )
        )

    faces = []
    for fid, (cls, sides) in enumerate(face_specs):
        boundary = tuple((ci, "+" if side == 0 else "-") for ci, side in sides)
        face = Face(id=fid, cls=cls, boundary=boundary, local_degree=0)
        faces.append(face)
    cx = CellComplex(family, p, vertices, tuple(edges), tuple(faces), meta)

    # Second pass: local degrees need the assembled complex (the median test
    # reads edge angles), and over PER2 the face class itself is read off the
    # median vertices rather than trusted from the sweep start.
    fixed = []
    for face in cx.faces:
        cls = face.cls
        if family is Family.PER2 and face.boundary:
            median_words = {
                cx.vertices[cx.slot_tail_head(face.boundary[i])[1]].necklace
                for i in cx.median_vertex_slots(face)
            }
            if not median_words:
                raise BuildError(f"face {face.id} has no median vertex")
            cls = trio(ternary_necklace(min(median_words)))
            if not median_words <= set(cls.members):
                raise BuildError(
                    f"median labels {sorted(median_words)} of face {face.id} "
                    "span more than one trio"
                )
            face = Face(face.id, cls, face.boundary, 0)
        degree = cx.face_local_degree(face)
        fixed.append(Face(face.id, cls, face.boundary, degree))
    if len({f.cls for f in fixed}) != len(fixed):
        raise BuildError("two faces were assigned the same cycle class")
    cx = CellComplex(family, p, vertices, tuple(edges), tuple(fixed), meta)

    report = validate(cx)
    if not report.ok:
        raise BuildError("invalid complex:\n" + "\n".join(report.problems))
    return cx


# ---------------------------------------------------------------------------
# telephone sweep


def _telephone(family: Family, p: int) -> CellComplex:
    _check_build_period(family, p)
    comps = primitive_components(family, p)
    side_words = [_side_words(family, c) for c in comps]
    positions = [
        (Fraction(c.low.num, c.low.den), Fraction(c.high.num, c.high.den))
        for c in comps
    ]

    # all angle events, sorted by position and indexed per necklace word for
    # O(log) "next matching angle" queries
    by_word: dict[str, list[EdgeEvent]] = defaultdict(list)
    for ci, comp in enumerate(comps):
        for side in (0, 1):
            by_word[side_words[ci][side]].append(
                EdgeEvent(positions[ci][side], ci, side, comp, side_words[ci])
            )
    for events in by_word.values():
        events.sort(key=lambda e: e.position)
    pos_index = {w: [e.position for e in evs] for w, evs in by_word.items()}

    def next_match(word: str, after: Fraction) -> EdgeEvent | None:
        events = by_word.get(word)
        if not events:
            return None
        i = bisect_right(pos_index[word], after)
        return events[i] if i < len(events) else events[0]

    words, classes = _vertex_classes(family, p)
    word_set = set(words)
    for lo_word, hi_word in side_words:
        if lo_word not in word_set or hi_word not in word_set:
            raise BuildError(f"angle label {lo_word}/{hi_word} is not a period-{p} necklace")

    class_of = {}
    for cls in classes:
        for w in cls.members:
            class_of[w] = cls

    # One sweep per necklace, in canonical order.  A start whose first match
    # is already consumed would only re-trace that edge's face (the sweep is
    # memoryless), so it is skipped; distinct faces of one class are then
    # impossible and the class map stays a bijection onto the faces.
    consumed: set[tuple[int, int]] = set()
    face_specs: list[tuple[CycleClass, list[tuple[int, int]]]] = []
    empty_classes: set[CycleClass] = set()
    for start in words:
        first_match = next_match(start, Fraction(0))
        if first_match is None:
            # isolated sheet: no component ever carries this label
            cls = class_of[start]
            if cls not in empty_classes:
                empty_classes.add(cls)
                face_specs.append((cls, []))
            continue
        if (first_match.index, first_match.side) in consumed:
            continue
        sides: list[tuple[int, int]] = []
        active = start
        cursor = Fraction(0)
        first = None
        for _ in range(2 * len(comps) + 1):
            match = next_match(active, cursor)
            if match is None:
                raise BuildError(f"label {active} vanished mid-face (start {start})")
            ci, side = match.index, match.side
            key = (ci, side)
            if key == first:
                break
            if key in consumed:
                raise BuildError(
                    f"directed edge {comps[ci].label} (side {side}) reused; "
                    f"start {start} collides with an earlier face"
                )
            consumed.add(key)
            sides.append(key)
            if first is None:
                first = key
            active = side_words[ci][1 - side]
            cursor = positions[ci][1]  # resume past the pair's higher angle
        else:
            raise BuildError(f"sweep from {start} did not terminate")
        face_specs.append((class_of[start], sides))

    if len(consumed) != 2 * len(comps):
        missing = [
            (comps[ci].label, side)
            for ci in range(len(comps))
            for side in (0, 1)
            if (ci, side) not in consumed
        ]
        raise BuildError(f"unreachable directed edges: {missing}")

    meta = ()
    if family is Family.PER2:
        meta = (
            (
                "face_class_labels",
                "assigned from median vertices; matching the sweep class relies "
                "on the unproven continuation-consistency of the two codings",
            ),
        )
    return _assemble(family, p, comps, face_specs, meta)


def telephone_per1(p: int) -> CellComplex:
    """Angle-sweep construction over the polynomial family."""
    return _telephone(Family.PER1, p)


def telephone_per2(p: int) -> CellComplex:
    """Angle-sweep construction over the critical-2-cycle family."""
    return _telephone(Family.PER2, p)


# ---------------------------------------------------------------------------
# bar method


def _chain_directions(
    sides: list[int], endpoint_words: list[tuple[str, str]]
) -> list[tuple[int, int]] | None:
    """Orient a cyclic side list so consecutive sides share a vertex.

    Tries both orientations of the first side; the rest is forced.  Returns
    [(component index, tail side)] or None if no orientation chains.
    """
    for first_side in (0, 1):
        out = [(sides[0], first_side)]
        head = endpoint_words[sides[0]][1 - first_side]
        ok = True
        for ci in sides[1:]:
            lo, hi = endpoint_words[ci]
            if head == lo:
                out.append((ci, 0))
                head = hi
            elif head == hi:
                out.append((ci, 1))
                head = lo
            else:
                ok = False
                break
        if ok and head == endpoint_words[sides[0]][first_side]:
            return out
    return None


def _euler_circuit(
    directed: list[tuple[int, int]], endpoint_words: list[tuple[str, str]]
) -> list[tuple[int, int]]:
    """Deterministic Euler circuit through fully directed face sides.

    The sides of a face form a balanced connected directed multigraph on its
    vertex words (they come from a closed boundary walk), so Hierholzer's
    algorithm applies; arcs are popped in lexicographic order and the start
    vertex is the least word present.
    """
    out_arcs: dict[str, list[tuple[str, int, int]]] = defaultdict(list)
    for ci, tail in directed:
        tail_word = endpoint_words[ci][tail]
        head_word = endpoint_words[ci][1 - tail]
        out_arcs[tail_word].append((head_word, ci, tail))
    for arcs in out_arcs.values():
        arcs.sort(reverse=True)  # pop() then yields lexicographic order

    stack: list[tuple[str, tuple[int, int] | None]] = [(min(out_arcs), None)]
    trail: list[tuple[int, int]] = []
    while stack:
        v, arc_in = stack[-1]
        if out_arcs[v]:
            head, ci, tail = out_arcs[v].pop()
            stack.append((head, (ci, tail)))
        else:
            stack.pop()
            if arc_in is not None:
                trail.append(arc_in)
    trail.reverse()
    if len(trail) != len(directed):
        raise BuildError("face side multigraph is not connected")
    return trail


def bar_per1(p: int) -> CellComplex:
    """Kneading-sequence construction over the polynomial family."""
    _check_build_period(Family.PER1, p)
    comps = primitive_components(Family.PER1, p)
    endpoint_words = [_side_words(Family.PER1, c) for c in comps]
    perturbation_words = []
    for comp in comps:
        k0, k1 = perturbations(comp.kneading)
        perturbation_words.append((k0.word, k1.word))

    _, classes = _vertex_classes(Family.PER1, p)
    class_of_word = {}
    for cls in classes:
        for w in cls.members:
            class_of_word[w] = cls

    # sides per face: barred (perturbation equals the greater duo member, or
    # the *-to-1 resolution when the duo is reflexive), then unbarred, each
    # ascending by display label
    face_sides: dict[CycleClass, list[tuple[int, bool]]] = {cls: [] for cls in classes}
    for ci, comp in enumerate(comps):
        for which, word in enumerate(perturbation_words[ci]):
            cls = class_of_word[word]
            if cls.size == 1:
                barred = which == 1
            else:
                barred = word == cls.members[-1]
            face_sides[cls].append((ci, barred))

    face_specs: list[tuple[CycleClass, list[tuple[int, int]]]] = []
    tails_used: dict[int, list[int]] = defaultdict(list)
    reflexive: list[tuple[CycleClass, list[int]]] = []
    for cls in classes:
        sides = face_sides[cls]
        sides.sort(key=lambda s: (not s[1], comps[s[0]].label))
        ordered = [ci for ci, _ in sides]
        if cls.size == 1:
            reflexive.append((cls, ordered))
            continue
        chained = _chain_directions(ordered, endpoint_words)
        if chained is None:
            raise BuildError(f"bar face {cls} does not chain through vertices")
        face_specs.append((cls, chained))
        for ci, tail in chained:
            tails_used[ci].append(tail)

    # A reflexive face's sides always have their partner occurrence in some
    # non-reflexive face (the two perturbations differ in weight, so at most
    # one is complement-invariant), which forces every direction; the chosen
    # side order need not chain, so the boundary is re-threaded as an Euler
    # circuit over those forced directions.
    for cls, ordered in reflexive:
        directed = []
        for ci in ordered:
            if len(tails_used[ci]) != 1:
                raise BuildError(
                    f"component {comps[ci].label} lacks a forcing partner for face {cls}"
                )
            directed.append((ci, 1 - tails_used[ci][0]))
        face_specs.append((cls, _euler_circuit(directed, endpoint_words)))

    order = {cls: i for i, cls in enumerate(classes)}
    face_specs.sort(key=lambda item: order[item[0]])
    return _assemble(Family.PER1, p, comps, face_specs)
