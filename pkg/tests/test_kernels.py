from hypothesis import given, strategies as st

from grouptool import _pykernels, kernels
from grouptool.corpus import surface_group
from grouptool.oracles import DehnOracle
from conftest import BACKENDS, letters


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_free_reduce_examples(backend):
    assert list(backend.free_reduce([1, -1])) == []
    assert list(backend.free_reduce([1, 2, -2, 1])) == [1, 1]
    assert list(backend.free_reduce([])) == []


@given(letters(3, 40))
def test_free_reduce_backends_agree(w):
    outs = [list(m.free_reduce(w)) for m in BACKENDS.values()]
    assert all(o == outs[0] for o in outs)
    assert list(kernels.free_reduce(outs[0])) == outs[0]


@given(letters(4, 30))
def test_dehn_reduce_backends_agree(w):
    P = surface_group(2)
    cycles = DehnOracle(4, P.letters(P.relators[0])).cycles
    outs = [list(m.dehn_reduce(w, cycles)) for m in BACKENDS.values()]
    assert all(o == outs[0] for o in outs)
    assert len(outs[0]) <= len(w)


@given(letters(3, 30), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_prefix_min_backends_agree(w, values):
    outs = [tuple(m.prefix_min(w, values)) for m in BACKENDS.values()]
    assert all(o == outs[0] for o in outs)
    low, total = outs[0]
    assert low <= 0 and low <= total


@given(letters(3, 30))
def test_exponent_sums_backends_agree(w):
    outs = [list(m.exponent_sums(w, 3)) for m in BACKENDS.values()]
    assert all(o == outs[0] for o in outs)
    assert outs[0] == list(_pykernels.exponent_sums(w, 3))


def test_dehn_reduce_kills_relator(backend):
    P = surface_group(2)
    r = P.letters(P.relators[0])
    cycles = DehnOracle(4, r).cycles
    assert list(backend.dehn_reduce(r, cycles)) == []
    assert list(backend.dehn_reduce(r[3:] + r[:3], cycles)) == []
    assert list(backend.dehn_reduce([1], cycles)) == [1]


def test_forced_fallback_gives_same_results():
    import json
    import os
    import subprocess
    import sys

    script = ("import json; from grouptool import kernels; from grouptool.corpus import "
              "proposition_bundle; from grouptool.fibration import fiber; "
              "print(json.dumps([kernels.BACKEND, list(fiber(proposition_bundle()[0]).b.direction)]))")
    env = dict(os.environ, GROUPTOOL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True,
                         text=True, check=True).stdout
    backend, b = json.loads(out)
    assert backend == "python"
    assert b == [1, 0, 0, 0, 1, 1, 1, 1]
