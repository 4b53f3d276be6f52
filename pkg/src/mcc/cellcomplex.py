"""The labeled 2-complex produced by the construction algorithms.

Faces store directed boundary words over the edge set; an edge traversed
"+" runs from its low-angle endpoint to its high-angle endpoint.  Validation
checks the gluing axioms (each edge used once per direction, consecutive
boundary edges chained through a common vertex) plus the label coherence
between edges and their components.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .components import HyperbolicComponent
from .counting import Family
from .cycles import CycleClass


@dataclass(frozen=True)
class Vertex:
    id: int
    necklace: str


@dataclass(frozen=True)
class Edge:
    id: int
    label: int
    component: HyperbolicComponent
    endpoints: tuple[int, int]  # vertex ids at (low angle, high angle)


@dataclass(frozen=True)
class Face:
    id: int
    cls: CycleClass
    boundary: tuple[tuple[int, str], ...]  # (edge id, "+" or "-")
    local_degree: int


@dataclass(frozen=True)
class CellComplex:
    family: Family
    period: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    meta: tuple[tuple[str, str], ...] = ()

    # -- basic traversal helpers ------------------------------------------

    def vertex_by_necklace(self, word: str) -> Vertex:
        return self._necklace_index()[word]

    def _necklace_index(self):
        if not hasattr(self, "_nidx"):
            object.__setattr__(self, "_nidx", {v.necklace: v for v in self.vertices})
        return self._nidx

    def slot_tail_head(self, slot: tuple[int, str]) -> tuple[int, int]:
        """Vertex ids (tail, head) of a directed boundary slot."""
        edge = self.edges[slot[0]]
        lo, hi = edge.endpoints
        return (lo, hi) if slot[1] == "+" else (hi, lo)

    def face_vertex_path(self, face: Face) -> list[int]:
        """Vertex ids visited along the boundary (head of each slot)."""
        return [self.slot_tail_head(slot)[1] for slot in face.boundary]

    # -- statistics --------------------------------------------------------

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def face_sizes(self) -> tuple[int, ...]:
        return tuple(len(f.boundary) for f in self.faces)

    def has_bigon(self) -> bool:
        """A face bounded by exactly two *distinct* edges."""
        return any(
            len(f.boundary) == 2 and f.boundary[0][0] != f.boundary[1][0]
            for f in self.faces
        )

    def connected_components(self) -> list[dict]:
        """Vertex/edge/face partition into topological components.

        A face with boundary belongs to the component of its boundary
        vertices; an isolated face (possible only in the edgeless case)
        attaches to the vertex carrying its class representative.
        """
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for edge in self.edges:
            a, b = (find(v) for v in edge.endpoints)
            if a != b:
                parent[a] = b

        groups: dict[int, dict] = {}
        for v in self.vertices:
            groups.setdefault(find(v.id), {"vertices": [], "edges": [], "faces": []})[
                "vertices"
            ].append(v.id)
        for edge in self.edges:
            groups[find(edge.endpoints[0])]["edges"].append(edge.id)
        for face in self.faces:
            if face.boundary:
                root = find(self.slot_tail_head(face.boundary[0])[0])
            else:
                root = find(self.vertex_by_necklace(face.cls.representative).id)
            groups[root]["faces"].append(face.id)
        return [groups[k] for k in sorted(groups)]

    def component_count(self) -> int:
        return len(self.connected_components())

    def genus_per_component(self) -> list[int]:
        out = []
        for comp in self.connected_components():
            chi = len(comp["vertices"]) - len(comp["edges"]) + len(comp["faces"])
            if chi % 2 != 0:
                raise ArithmeticError(f"odd Euler characteristic {chi} in component")
            out.append(1 - chi // 2)
        return out

    def stats(self) -> dict:
        from .counting import genus as genus_formula

        return {
            "V": len(self.vertices),
            "E": len(self.edges),
            "F": len(self.faces),
            "euler": self.euler(),
            "components": self.component_count(),
            "genus_formula": genus_formula(self.family, self.period),
            "genus_per_component": self.genus_per_component(),
        }

    # -- local degree -------------------------------------------------------

    def _attachment_angle(self, edge: Edge, vertex_id: int):
        lo_vid, hi_vid = edge.endpoints
        if vertex_id == lo_vid:
            return edge.component.low
        if vertex_id == hi_vid:
            return edge.component.high
        raise ValueError(f"vertex {vertex_id} not on edge {edge.id}")

    def median_vertex_slots(self, face: Face) -> list[int]:
        """Boundary positions i whose corner vertex (between slot i and i+1)
        is median: the ccw arc from the arrival angle to the departure angle
        contains 1/2.  Equal angles count as a full turn."""
        medians = []
        n = len(face.boundary)
        for i in range(n):
            e_in = self.edges[face.boundary[i][0]]
            e_out = self.edges[face.boundary[(i + 1) % n][0]]
            v = self.slot_tail_head(face.boundary[i])[1]
            if v != self.slot_tail_head(face.boundary[(i + 1) % n])[0]:
                raise ValueError(f"face {face.id} boundary breaks at position {i}")
            alpha = self._attachment_angle(e_in, v)
            beta = self._attachment_angle(e_out, v)
            # compare the arc (alpha, beta) against 1/2 over the common
            # denominator dc: 2a <> dc decides alpha <> 1/2 (dc is odd, so
            # equality cannot occur)
            a, b = alpha.num * beta.den, beta.num * alpha.den
            dc = alpha.den * beta.den
            if a == b:
                medians.append(i)  # full turn
            elif a < b:
                if 2 * a < dc < 2 * b:
                    medians.append(i)
            else:
                if 2 * a < dc or 2 * b > dc:
                    medians.append(i)
        return medians

    def face_local_degree(self, face: Face) -> int:
        """PER1: size of the duo.  PER2: number of median vertices."""
        if self.family is Family.PER1:
            return face.cls.size
        if not face.boundary:
            return 1
        count = len(self.median_vertex_slots(face))
        if count not in (1, 3):
            raise ArithmeticError(f"face {face.id} has median count {count}")
        return count

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        d = {
            "family": self.family.tag,
            "period": self.period,
            "vertices": [{"id": v.id, "label": v.necklace} for v in self.vertices],
            "edges": [
                {
                    "id": e.id,
                    "label": e.label,
                    "angles": [str(e.component.low), str(e.component.high)],
                    "endpoints": list(e.endpoints),
                }
                for e in self.edges
            ],
            "faces": [
                {
                    "id": f.id,
                    "class": list(f.cls.members),
                    "boundary": [{"edge": e, "dir": d_} for e, d_ in f.boundary],
                    "local_degree": f.local_degree,
                }
                for f in self.faces
            ],
            "stats": self.stats(),
        }
        if self.meta:
            d["meta"] = dict(self.meta)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_dot(self) -> str:
        name = f"mcc_{self.family.tag}_p{self.period}"
        lines = [f'graph "{name}" {{']
        for v in self.vertices:
            lines.append(f'  v{v.id} [label="{v.necklace}"];')
        for e in self.edges:
            a, b = e.endpoints
            lines.append(f'  v{a} -- v{b} [label="{e.label}"];')
        for f in self.faces:
            word = " ".join(f"{self.edges[e].label}{d}" for e, d in f.boundary)
            lines.append(
                f"  // face {f.id} class={f.cls} degree={f.local_degree} boundary: {word}"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)
    face_reports: dict[int, list[str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, message: str, face_id: int | None = None) -> None:
        self.problems.append(message)
        if face_id is not None:
            self.face_reports.setdefault(face_id, []).append(message)


def _expected_side_words(cx: CellComplex, component: HyperbolicComponent):
    from .angles import binary_cycle
    from .cycles import basilica_label, least_rotation

    if cx.family is Family.PER1:
        return (
            least_rotation(binary_cycle(component.low)),
            least_rotation(binary_cycle(component.high)),
        )
    return (basilica_label(component.low).word, basilica_label(component.high).word)


def validate(cx: CellComplex) -> ValidationReport:
    """Check every structural invariant; the report names offending ids."""
    report = ValidationReport()

    words = [v.necklace for v in cx.vertices]
    if len(set(words)) != len(words):
        dupes = [w for w, c in Counter(words).items() if c > 1]
        report.add(f"duplicate vertex necklaces: {dupes}")
    for pos, v in enumerate(cx.vertices):
        if v.id != pos:
            report.add(f"vertex id {v.id} does not match its position {pos}")

    for pos, e in enumerate(cx.edges):
        if e.id != pos:
            report.add(f"edge id {e.id} does not match its position {pos}")
    for e in cx.edges:
        lo_word, hi_word = _expected_side_words(cx, e.component)
        got = (cx.vertices[e.endpoints[0]].necklace, cx.vertices[e.endpoints[1]].necklace)
        if got != (lo_word, hi_word):
            report.add(f"edge {e.id} endpoints {got} != component labels {(lo_word, hi_word)}")
        if lo_word == hi_word:
            report.add(f"edge {e.id} joins a vertex to itself (non-primitive?)")

    # gluing parity: each edge id exactly once per direction over all faces
    seen = Counter()
    for f in cx.faces:
        for slot in f.boundary:
            seen[slot] += 1
    for e in cx.edges:
        for d in "+-":
            if seen[(e.id, d)] != 1:
                report.add(f"edge {e.id} direction {d} used {seen[(e.id, d)]} times")
    for eid, _ in seen:
        if not 0 <= eid < len(cx.edges):
            report.add(f"boundary references unknown edge {eid}")

    # boundary coherence and per-face degree bookkeeping
    for f in cx.faces:
        if any(not 0 <= eid < len(cx.edges) for eid, _ in f.boundary):
            continue  # already reported above
        n = len(f.boundary)
        for i in range(n):
            head = cx.slot_tail_head(f.boundary[i])[1]
            tail_next = cx.slot_tail_head(f.boundary[(i + 1) % n])[0]
            if head != tail_next:
                report.add(
                    f"face {f.id} boundary incoherent at position {i}: "
                    f"head {head} vs next tail {tail_next}",
                    face_id=f.id,
                )
        if not f.boundary and f.cls.size != 1:
            report.add(f"face {f.id} is isolated but its class is not a singleton", f.id)
        try:
            degree = cx.face_local_degree(f)
            if degree != f.local_degree:
                report.add(f"face {f.id} stored degree {f.local_degree} != {degree}", f.id)
            if degree != f.cls.size:
                report.add(f"face {f.id} degree {degree} != class size {f.cls.size}", f.id)
        except (ArithmeticError, ValueError) as exc:
            report.add(f"face {f.id} degree computation failed: {exc}", f.id)

    return report


# ---------------------------------------------------------------------------
# canonical form / isomorphism


def _canonical_rotation(items: tuple) -> tuple:
    if not items:
        return items
    return min(tuple(items[i:] + items[:i]) for i in range(len(items)))


def _face_key(cx: CellComplex, face: Face, as_multiset: bool) -> tuple:
    directed = tuple(f"{cx.edges[e].label}{d}" for e, d in face.boundary)
    if as_multiset:
        return tuple(sorted(directed))
    return _canonical_rotation(directed)


def canonical_form(cx: CellComplex, lax_reflexive: bool = False) -> str:
    """Deterministic string identifying the labeled complex.

    Face boundaries are compared up to cyclic rotation (orientation is kept);
    with ``lax_reflexive`` the boundaries of singleton-class faces are reduced
    to sorted multisets, which is the right notion when two algorithms only
    agree on those faces up to re-threading.
    """
    parts = [f"family={cx.family.tag}", f"period={cx.period}"]
    parts.append("V:" + ",".join(v.necklace for v in cx.vertices))
    parts.append(
        "E:"
        + ";".join(
            f"{e.label}:{e.component.low}-{e.component.high}"
            f":{cx.vertices[e.endpoints[0]].necklace}-{cx.vertices[e.endpoints[1]].necklace}"
            for e in sorted(cx.edges, key=lambda e: e.label)
        )
    )
    face_keys = sorted(
        (f.cls.members, _face_key(cx, f, lax_reflexive and f.cls.size == 1))
        for f in cx.faces
    )
    for members, key in face_keys:
        parts.append("F:[" + " ".join(members) + "]:" + ",".join(key))
    return "\n".join(parts)


def isomorphic(c1: CellComplex, c2: CellComplex, lax_reflexive: bool = False) -> bool:
    """Label-rigid isomorphism: same vertices, same edges, faces matching up
    to rotation of their directed boundary (never reversal)."""
    return canonical_form(c1, lax_reflexive) == canonical_form(c2, lax_reflexive)
