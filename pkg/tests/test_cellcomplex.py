"""Complex structure: validation, statistics, comparison, export."""

import json

from mcc.builders import bar_per1, telephone_per1, telephone_per2
from mcc.cellcomplex import (
    CellComplex,
    Edge,
    Face,
    canonical_form,
    isomorphic,
    validate,
)


def test_validate_built_complexes():
    assert validate(telephone_per1(5)).ok
    assert validate(telephone_per2(5)).ok
    assert validate(bar_per1(6)).ok


def test_validate_flags_same_direction_reuse():
    cx = telephone_per1(3)
    face = cx.faces[0]
    # use the single edge twice in the same direction
    broken_face = Face(face.id, face.cls, ((0, "+"), (0, "+")), face.local_degree)
    broken = CellComplex(cx.family, cx.period, cx.vertices, cx.edges, (broken_face,))
    report = validate(broken)
    assert not report.ok
    assert any("direction" in p for p in report.problems)
    # the boundary also breaks at the repeated edge, with per-face diagnostics
    assert face.id in report.face_reports


def test_validate_flags_bad_endpoint_labels():
    cx = telephone_per1(4)
    e = cx.edges[0]
    swapped = Edge(e.id, e.label, e.component, (e.endpoints[1], e.endpoints[0]))
    broken = CellComplex(
        cx.family, cx.period, cx.vertices, (swapped,) + cx.edges[1:], cx.faces
    )
    assert not validate(broken).ok


def test_empty_complex_is_valid():
    cx = telephone_per2(3)
    assert validate(cx).ok
    assert len(cx.edges) == 0
    assert all(not f.boundary for f in cx.faces)


def test_euler_components_genus():
    cx = telephone_per1(5)
    assert cx.euler() == -2
    assert cx.component_count() == 1
    assert cx.genus_per_component() == [2]

    cx2 = telephone_per2(5)
    assert cx2.euler() == 2
    assert cx2.genus_per_component() == [0]

    cx3 = telephone_per2(3)
    assert cx3.component_count() == 2
    assert cx3.genus_per_component() == [0, 0]
    assert cx3.stats()["genus_formula"] == -1


def test_face_sizes_and_bigons():
    assert sorted(telephone_per1(5).face_sizes()) == [6, 8, 8]
    for p in range(3, 13):
        assert not telephone_per1(p).has_bigon(), p
    # the period-3 size-2 face reuses one edge and is not a bigon
    assert sorted(telephone_per1(3).face_sizes()) == [2]


def test_local_degrees():
    cx = telephone_per1(5)
    assert [f.local_degree for f in cx.faces] == [2, 2, 2]
    cx4 = telephone_per1(4)
    degrees = {tuple(f.cls.members): f.local_degree for f in cx4.faces}
    assert degrees[("0001", "0111")] == 2
    assert degrees[("0011",)] == 1


def test_median_counts_period5():
    cx = telephone_per2(5)
    for f in cx.faces:
        slots = cx.median_vertex_slots(f)
        assert len(slots) == 3 == f.local_degree
        words = {cx.vertices[cx.slot_tail_head(f.boundary[i])[1]].necklace for i in slots}
        assert words <= set(f.cls.members)


def test_isomorphic_examples():
    assert isomorphic(telephone_per1(5), bar_per1(5))
    assert not isomorphic(telephone_per1(5), telephone_per2(5))

    cx = telephone_per1(5)
    rotated_faces = tuple(
        Face(f.id, f.cls, f.boundary[2:] + f.boundary[:2], f.local_degree)
        for f in cx.faces
    )
    rotated = CellComplex(cx.family, cx.period, cx.vertices, cx.edges, rotated_faces)
    assert isomorphic(cx, rotated)

    reversed_faces = tuple(
        Face(
            f.id,
            f.cls,
            tuple((e, "+" if d == "-" else "-") for e, d in reversed(f.boundary)),
            f.local_degree,
        )
        for f in cx.faces
    )
    flipped = CellComplex(cx.family, cx.period, cx.vertices, cx.edges, reversed_faces)
    assert not isomorphic(cx, flipped)  # orientation must be preserved


def test_canonical_form_deterministic():
    assert canonical_form(telephone_per1(6)) == canonical_form(telephone_per1(6))


def test_json_schema():
    cx = telephone_per2(5)
    d = cx.to_json_dict()
    assert list(d) == ["family", "period", "vertices", "edges", "faces", "stats", "meta"]
    assert d["family"] == "per2" and d["period"] == 5
    assert all(set(v) == {"id", "label"} for v in d["vertices"])
    assert all(set(e) == {"id", "label", "angles", "endpoints"} for e in d["edges"])
    assert all(
        set(f) == {"id", "class", "boundary", "local_degree"} for f in d["faces"]
    )
    assert set(d["stats"]) == {
        "V", "E", "F", "euler", "components", "genus_formula", "genus_per_component",
    }
    json.loads(cx.to_json())  # round-trips

    d1 = telephone_per1(5).to_json_dict()
    assert list(d1) == ["family", "period", "vertices", "edges", "faces", "stats"]


def test_dot_export():
    cx = telephone_per2(5)
    dot = cx.to_dot()
    assert dot.count("--") == 6
    for label in (3, 5, 7, 23, 25, 27):
        assert f'[label="{label}"]' in dot
    assert dot.count("// face") == 2


def test_vertex_lookup_and_slots():
    cx = telephone_per1(4)
    v = cx.vertex_by_necklace("0011")
    assert cx.vertices[v.id].necklace == "0011"
    eid, d = cx.faces[0].boundary[0]
    tail, head = cx.slot_tail_head((eid, d))
    assert {tail, head} == set(cx.edges[eid].endpoints)
