import pytest
from hypothesis import given, settings, strategies as st

from isingmaps import _pykernel, kernels

big = st.integers(-(10**40), 10**40)
int_polys = st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 3)),
                            big, max_size=8)
pairs = st.lists(st.tuples(st.integers(-50, 50), int_polys, int_polys), min_size=1, max_size=3)


def naive(pairs, gmax):
    out = {}
    for w, P, Q in pairs:
        for (a1, b1, g1), c1 in P.items():
            for (a2, b2, g2), c2 in Q.items():
                if g1 + g2 <= gmax:
                    key = (a1 + a2, b1 + b2, g1 + g2)
                    out[key] = out.get(key, 0) + w * c1 * c2
    return {k: v for k, v in out.items() if v}


def run(backend, data, gmax, threads=1):
    prepared = [(w, backend.prepare(P), backend.prepare(Q)) for w, P, Q in data]
    return {k: v for k, v in backend.convolve_sum(prepared, gmax, threads).items() if v}


@given(pairs, st.integers(0, 6))
def test_python_kernel_matches_naive_product(data, gmax):
    assert run(_pykernel, data, gmax) == naive(data, gmax)


@pytest.mark.skipif("compiled" not in kernels.available(), reason="extension not built")
@settings(max_examples=60)
@given(pairs, st.integers(0, 6), st.sampled_from([1, 3]))
def test_compiled_kernel_matches_python(data, gmax, threads):
    compiled = kernels.get_backend("compiled")
    assert run(compiled, data, gmax, threads) == run(_pykernel, data, gmax)


def test_backend_selection(monkeypatch):
    assert kernels.get_backend("python").NAME == "python"
    monkeypatch.setenv("ISING_BACKEND", "python")
    assert kernels.get_backend().NAME == "python"
    with pytest.raises(ValueError):
        kernels.get_backend("gpu")


def test_thread_budget(monkeypatch):
    monkeypatch.setenv("ISING_THREADS", "4")
    assert kernels.thread_budget() == 4
    monkeypatch.setenv("ISING_THREADS", "many")
    with pytest.raises(ValueError):
        kernels.thread_budget()
