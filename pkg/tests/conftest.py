import pytest

from fibmahler.arith import fib_table
from fibmahler.lattice import build_R_chain
from fibmahler.measures import PrimePair, coefficient_vector

N_DIM = 13
DEFAULT_PAIR = (1879, 198301)


@pytest.fixture(scope="session")
def fib13():
    return fib_table(N_DIM, N_DIM)


@pytest.fixture(scope="session")
def pair():
    return PrimePair(*DEFAULT_PAIR)


@pytest.fixture(scope="session")
def coeffs(pair, fib13):
    return coefficient_vector(pair, N_DIM, fib13)


@pytest.fixture(scope="session")
def chain12(fib13):
    """R_1..R_12; cheap enough to recompute without the disk cache."""
    return build_R_chain(12, N_DIM, fib13)


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """Shared cache directory; level 13 is enumerated at most once per run."""
    return tmp_path_factory.mktemp("famcache")


@pytest.fixture(scope="session")
def chain13(fib13, cache_dir):
    """Full restricted chain through level 13, via the disk cache."""
    from fibmahler import cache as diskcache
    from fibmahler.lattice import build_R_chain as _chain

    c_families = {n: diskcache.ensure_C(cache_dir, n, N_DIM, fib13)
                  for n in range(1, 14)}
    return _chain(13, N_DIM, fib13, c_families)
