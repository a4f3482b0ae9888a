import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resolvent import abcat as ab
from resolvent import bicomplexes as bc
from resolvent import complexes as cx
from resolvent import formats as fm

BACKENDS = [ab.vect(), ab.nilp(2), ab.nilp(3, 7), ab.repa2()]
seeds = st.integers(0, 2**32)


def random_document(b, rng) -> fm.Document:
    x = cx.random_complex(b, rng, -1, 1)
    y = cx.random_complex(b, rng, -1, 1)
    f = cx.random_chain_map(rng, x, y)
    a = ab.random_obj(b, rng)
    cells = {(0, 0): a, (1, 0): ab.random_obj(b, rng)}
    grid = bc.Multicomplex(b, cells, {1: {(0, 0): ab.random_mor(rng, a, cells[(1, 0)])}})
    return fm.Document(b, {"X": x, "Y": y}, {"f": f}, {"G": grid}, {"A": a})


def same(d1: fm.Document, d2: fm.Document) -> bool:
    return (d1.backend == d2.backend
            and {k: v.trimmed() for k, v in d1.complexes.items()}
            == {k: v.trimmed() for k, v in d2.complexes.items()}
            and d1.objects == d2.objects
            and all(d1.maps[k] == d2.maps[k] for k in d1.maps)
            and all(d1.grids[k] == d2.grids[k] for k in d1.grids))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(BACKENDS), seeds)
def test_text_round_trip(b, s):
    doc = random_document(b, np.random.default_rng(s))
    assert same(fm.parse_text(fm.dump(doc)), doc)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(BACKENDS), seeds)
def test_json_round_trip(b, s):
    doc = random_document(b, np.random.default_rng(s))
    text = json.dumps(fm.to_json(doc))
    assert same(fm.parse_json(text), doc)
    assert same(fm.parse_json(json.dumps(fm.to_json(fm.parse_text(fm.dump(doc))))), doc)


def test_sectionless_file_is_one_complex():
    doc = fm.parse_text("backend: nilp:2\ndegree 0: 2  # R\n  op: 0 0; 1 0\n")
    assert doc.complexes["input"] == cx.stalk(ab.free(ab.nilp(2)), 0)


def test_matrix_parsing():
    assert fm.parse_matrix("1 2; 3 4", (2, 2), "t").tolist() == [[1, 2], [3, 4]]
    assert fm.parse_matrix("-", (2, 1), "t").tolist() == [[0], [0]]
    with pytest.raises(fm.ParseError):
        fm.parse_matrix("1 2 3", (1, 2), "t")


@pytest.mark.parametrize("text", [
    "backend: vect\ndegree 0: 2\n  d: 1 0\ndegree 1: 1\n  d: 1\n",
    "backend: vect\ndegree 0: 1\n  d: 1\ndegree 1: 1\n  d: 1\ndegree 2: 1\n",
    "backend: vect\ndegree 0: x\n",
    "backend: nilp:2\ndegree 0: 2\n  op: 1 0; 0 1\n",
    "backend: vect\ndegree 0: 1\n  q: 1\n",
    "backend: vect\ndegree 0: 1\ndegree 0: 1\n",
    "backend: vect\n[grid G]\ncell (0,0): 1\n  d1: 1\ncell (1,0): 1\n  d1: 1\ncell (2,0): 1\n",
    "backend: vect\n[complex X]\ndegree 0: 1\n  d: 1\ndegree 1: 1\n"
    "[map f: X -> X]\ndegree 0: 1\ndegree 1: 0\n",
    "backend: vect\n[map f: X -> Y]\n",
    "backend: vect\n[complex X: A -> B]\n",
    "backend: vect\n[widget W]\n",
    "backend: vect\ndegree 0: 1\n[complex X]\n",
    "degree 0: 1\n",
    "backend: vect\np: 4\ndegree 0: 1\n",
    "backend: quiver\ndegree 0: 1\n",
])
def test_parse_errors(text):
    with pytest.raises(fm.ParseError):
        fm.parse_text(text)


def test_backend_resolution():
    text = "backend: repa2\np: 7\n[object A]\ndims: 1 1\nop: 3\n"
    assert fm.parse_text(text).backend == ab.repa2(7)
    assert fm.parse_text(text, ab.repa2(7)).objects["A"].f.tolist() == [[3]]
    with pytest.raises(ab.BackendMismatch):
        fm.parse_text(text, ab.repa2(5))
    bare = "degree 0: 1\n"
    assert fm.parse_text(bare, default=ab.vect(3)).backend == ab.vect(3)
    assert fm.parse_text(bare, ab.nilp(2)).backend == ab.nilp(2)


def test_load_picks_format(tmp_path):
    doc = random_document(ab.repa2(), np.random.default_rng(1))
    (tmp_path / "d.cplx").write_text(fm.dump(doc))
    (tmp_path / "d.json").write_text(json.dumps(fm.to_json(doc)))
    assert same(fm.load(tmp_path / "d.cplx"), doc)
    assert same(fm.load(tmp_path / "d.json"), doc)
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(fm.ParseError):
        fm.load(tmp_path / "bad.json")


def test_demo_inputs_parse():
    import pathlib
    root = pathlib.Path(__file__).resolve().parent.parent / "demos" / "data"
    for path in sorted(root.iterdir()):
        doc = fm.load(path, default=ab.vect())
        assert doc.backend is not None
