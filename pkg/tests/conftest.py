import pytest

from mdgcodes import MDGraph, build_mdg, extend_parity, gen_family, gen_hamming


def two_switch(graph):
    """Deterministic degree-preserving corruption: swap ends of two edges."""
    edges = graph.edges()
    e1 = edges[0]
    e2 = next(
        e for e in edges
        if len({*e, *e1}) == 4
        and not graph.has_edge(e1[0], e[1])
        and not graph.has_edge(e[0], e1[1])
    )
    es = set(edges) - {e1, e2} | {
        tuple(sorted((e1[0], e2[1]))),
        tuple(sorted((e2[0], e1[1]))),
    }
    return MDGraph(graph.vcount, es)


@pytest.fixture(scope="session")
def h7():
    return gen_hamming(3)


@pytest.fixture(scope="session")
def h15():
    return gen_family("hamming", 4)


@pytest.fixture(scope="session")
def v15a():
    return gen_family("vasilev", 4, seed=1)


@pytest.fixture(scope="session")
def v15b():
    return gen_family("vasilev", 4, seed=2)


@pytest.fixture(scope="session")
def xh16(h15):
    return extend_parity(h15)


@pytest.fixture(scope="session")
def xv16(v15a):
    return extend_parity(v15a)


@pytest.fixture(scope="session")
def g_h15(h15):
    return build_mdg(h15)


@pytest.fixture(scope="session")
def g_v15a(v15a):
    return build_mdg(v15a)


@pytest.fixture(scope="session")
def g_xh16(xh16):
    return build_mdg(xh16)


@pytest.fixture(scope="session")
def g_xv16(xv16):
    return build_mdg(xv16)
