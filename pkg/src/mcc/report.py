"""Face-statistics scan over a period range, with optional figure rendering.

The scan gathers, per period and family, the quantities behind the open
questions about the decompositions: bigon counts, largest/smallest face
sizes against their predicted values, reflexive-face statistics, and the
combinatorial shadow of the real locus (conjugation-fixed edges and
vertices).  Findings are reported, never asserted.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path

from . import builders
from .cellcomplex import CellComplex
from .counting import Family, capital_phi, totient


@dataclass(frozen=True)
class ScanRow:
    family: str
    p: int
    faces: int
    bigons: int
    smallest: int
    smallest_irreflexive: int | None
    largest: int
    largest_count: int
    predicted_largest: int | None
    largest_matches: bool | None
    reflexive_faces: int
    real_edges: int
    selfconj_vertices: int
    real_subgraph_components: int
    real_face_graph_connected: bool

    FIELDS = (
        "family", "p", "faces", "bigons", "smallest", "smallest_irreflexive",
        "largest", "largest_count", "predicted_largest", "largest_matches",
        "reflexive_faces", "real_edges", "selfconj_vertices",
        "real_subgraph_components", "real_face_graph_connected",
    )

    def as_dict(self) -> dict:
        return asdict(self)


def _predicted_largest(family: Family, p: int) -> int | None:
    """Conjectured largest-face size: Phi(p)+2 over the polynomial family,
    Phi(p) for odd p (p=5 or p>=9) and Phi(p)+1-phi(p/2)/2 for even p>=6
    over the other."""
    if family is Family.PER1:
        return capital_phi(p) + 2 if p >= 5 else None
    if p % 2 == 1:
        return capital_phi(p) if p == 5 or p >= 9 else None
    if p >= 6:
        half = totient(p // 2)
        if half % 2 != 0:
            return None
        return capital_phi(p) + 1 - half // 2
    return None


def _word_is_selfconj(family: Family, word: str) -> bool:
    from .cycles import least_rotation

    if family is Family.PER1:
        flipped = "".join("1" if c == "0" else "0" for c in word)
    else:
        flipped = "".join({"0": "2", "1": "1", "2": "0"}[c] for c in word)
    return least_rotation(flipped) == word


def _real_locus_stats(cx: CellComplex) -> tuple[int, int, int, bool]:
    """(real edge count, self-conjugate vertex count, components of the
    vertex-level real subgraph, connectivity of faces linked by real edges)."""
    real_edges = [e for e in cx.edges if e.component.is_real()]
    fixed_vertices = {
        v.id for v in cx.vertices if _word_is_selfconj(cx.family, v.necklace)
    }
    nodes = set(fixed_vertices)
    for e in real_edges:
        nodes.update(e.endpoints)
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in real_edges:
        a, b = find(e.endpoints[0]), find(e.endpoints[1])
        if a != b:
            parent[a] = b
    n_sub = len({find(v) for v in nodes})

    # faces joined whenever they share a conjugation-fixed edge
    fparent = {f.id: f.id for f in cx.faces}

    def ffind(x):
        while fparent[x] != x:
            fparent[x] = fparent[fparent[x]]
            x = fparent[x]
        return x

    real_ids = {e.id for e in real_edges}
    by_edge: dict[int, list[int]] = {}
    for f in cx.faces:
        for eid, _ in f.boundary:
            if eid in real_ids:
                by_edge.setdefault(eid, []).append(f.id)
    for face_ids in by_edge.values():
        for other in face_ids[1:]:
            a, b = ffind(face_ids[0]), ffind(other)
            if a != b:
                fparent[a] = b
    connected = len({ffind(f.id) for f in cx.faces}) == 1
    return len(real_edges), len(fixed_vertices), n_sub, connected


def scan_row(family: Family, p: int, cx: CellComplex | None = None) -> ScanRow:
    if cx is None:
        cx = (builders.telephone_per1 if family is Family.PER1 else builders.telephone_per2)(p)
    sizes = cx.face_sizes()
    bigons = sum(
        1
        for f in cx.faces
        if len(f.boundary) == 2 and f.boundary[0][0] != f.boundary[1][0]
    )
    irreflexive = [len(f.boundary) for f in cx.faces if f.cls.size > 1]
    largest = max(sizes) if sizes else 0
    predicted = _predicted_largest(family, p)
    real_edges, fixed_v, n_sub, face_conn = _real_locus_stats(cx)
    return ScanRow(
        family=family.tag,
        p=p,
        faces=len(cx.faces),
        bigons=bigons,
        smallest=min(sizes) if sizes else 0,
        smallest_irreflexive=min(irreflexive) if irreflexive else None,
        largest=largest,
        largest_count=sum(1 for s in sizes if s == largest),
        predicted_largest=predicted,
        largest_matches=(largest == predicted) if predicted is not None else None,
        reflexive_faces=sum(1 for f in cx.faces if f.cls.size == 1),
        real_edges=real_edges,
        selfconj_vertices=fixed_v,
        real_subgraph_components=n_sub,
        real_face_graph_connected=face_conn,
    )


def render_figures(rows: list[ScanRow], outdir: str | Path) -> list[Path]:
    """Write the face-statistics figures as PNG files; returns their paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    by_family: dict[str, list[ScanRow]] = {}
    for row in rows:
        by_family.setdefault(row.family, []).append(row)
    for rows_f in by_family.values():
        rows_f.sort(key=lambda r: r.p)

    written = []

    def _plot(fname, title, ylabel, series):
        fig, ax = plt.subplots(figsize=(6, 4))
        for label, xs, ys, style in series:
            ax.plot(xs, ys, style, label=label)
        ax.set_xlabel("period p")
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.legend()
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        path = outdir / fname
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    markers = {"per1": "o-", "per2": "s--"}
    _plot(
        "smallest_face.png",
        "Smallest face size",
        "boundary edges",
        [
            (fam, [r.p for r in rs], [r.smallest for r in rs], markers[fam])
            for fam, rs in sorted(by_family.items())
        ],
    )
    _plot(
        "smallest_irreflexive_face.png",
        "Smallest irreflexive face size",
        "boundary edges",
        [
            (
                fam,
                [r.p for r in rs if r.smallest_irreflexive is not None],
                [r.smallest_irreflexive for r in rs if r.smallest_irreflexive is not None],
                markers[fam],
            )
            for fam, rs in sorted(by_family.items())
        ],
    )
    largest_series = []
    for fam, rs in sorted(by_family.items()):
        largest_series.append((f"{fam} largest", [r.p for r in rs], [r.largest for r in rs], markers[fam]))
        with_pred = [r for r in rs if r.predicted_largest is not None]
        largest_series.append(
            (f"{fam} predicted", [r.p for r in with_pred], [r.predicted_largest for r in with_pred], "x:")
        )
    _plot("largest_face.png", "Largest face size vs prediction", "boundary edges", largest_series)
    return written
