"""Acceptance gate: one test per acceptance criterion, each ending with an
explicit PASS line (run with -s or check captured output on failure)."""

import random
from fractions import Fraction as F

from fibmahler.cli import main as cli_main
from fibmahler.envelope import build_envelope
from fibmahler.lattice import (build_S, enumerate_C, enumerate_factorizations,
                               pad, trim)
from fibmahler.simplex import check_witness, vertex_filter
from fibmahler.solver import max_compatible_N

N = 13

# frozen fixture: expected cardinality table, rows 1..13
CARDINALITY_TABLE = [
    (1, 1, 1, 1, 1),
    (2, 1, 1, 1, 1),
    (3, 2, 2, 2, 2),
    (4, 3, 3, 3, 3),
    (5, 6, 4, 4, 4),
    (6, 13, 5, 5, 5),
    (7, 38, 7, 7, 6),
    (8, 139, 11, 8, 7),
    (9, 695, 20, 10, 8),
    (10, 4699, 41, 12, 9),
    (11, 44359, 104, 18, 10),
    (12, 589359, 310, 24, 11),
    (13, 11197998, 1101, 44, 12),
]

# frozen fixture: expected new restricted points per level
DELTA_TABLE = {
    1: [], 2: [], 3: [], 4: [], 5: [], 6: [],
    7: [(1, 0, 0, 4)],
    8: [],
    9: [(1, 0, 0, 3, 0, 3)],
    10: [(1, 0, 0, 2, 0, 6)],
    11: [(1, 0, 0, 0, 0, 11), (1, 0, 0, 1, 0, 8, 0, 1),
         (1, 0, 0, 1, 0, 9, 1), (1, 0, 0, 2, 0, 5, 0, 2),
         (1, 0, 0, 3, 0, 2, 0, 3)],
    12: [(1, 0, 0, 0, 0, 10, 0, 3), (1, 0, 0, 1, 0, 7, 0, 4),
         (1, 0, 0, 1, 0, 9, 0, 0, 2), (1, 0, 0, 2, 0, 4, 0, 5),
         (1, 0, 0, 3, 0, 1, 0, 6)],
    13: [(1, 0, 0, 0, 0, 8, 0, 8), (1, 0, 0, 0, 0, 9, 0, 5, 0, 1),
         (1, 0, 0, 0, 0, 9, 0, 6, 1), (1, 0, 0, 0, 0, 10, 0, 2, 0, 2),
         (1, 0, 0, 1, 0, 5, 0, 9), (1, 0, 0, 1, 0, 6, 0, 6, 0, 1),
         (1, 0, 0, 1, 0, 6, 0, 7, 1), (1, 0, 0, 1, 0, 7, 0, 3, 0, 2),
         (1, 0, 0, 1, 0, 8, 0, 0, 0, 3), (1, 0, 0, 2, 0, 2, 0, 10),
         (1, 0, 0, 2, 0, 3, 0, 7, 0, 1), (1, 0, 0, 2, 0, 3, 0, 8, 1),
         (1, 0, 0, 2, 0, 4, 0, 4, 0, 2), (1, 0, 0, 2, 0, 5, 0, 1, 0, 3),
         (1, 0, 0, 3, 0, 0, 0, 8, 0, 1), (1, 0, 0, 3, 0, 0, 0, 9, 1),
         (1, 0, 0, 3, 0, 0, 1, 10), (1, 0, 0, 3, 0, 1, 0, 5, 0, 2),
         (1, 0, 0, 3, 0, 2, 0, 2, 0, 3)],
}


def run_cli(capsys, *argv):
    try:
        code = cli_main(list(argv))
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out


def test_criterion_1_cardinality_table(capsys, cache_dir):
    code, out = run_cli(capsys, "--cache-dir", str(cache_dir),
                        "table", "--n-max", "13")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,V,C,R,S"
    got = [tuple(int(c) for c in ln.split(",")) for ln in lines[1:]]
    assert got == CARDINALITY_TABLE
    print("PASS: criterion 1 (cardinality table rows 1..13, exact match)")


def test_criterion_2_delta_table(capsys, cache_dir):
    for n in range(1, 14):
        code, out = run_cli(capsys, "--cache-dir", str(cache_dir),
                            "delta", "--n", str(n))
        assert code == 0
        expected = "".join(",".join(map(str, v)) + "\n"
                           for v in DELTA_TABLE[n])
        assert out == expected, f"level {n} listing differs"
    print("PASS: criterion 2 (new restricted point listings 1..13, "
          "byte-exact)")


def test_criterion_3_compatibility(capsys, pair):
    code, out = run_cli(capsys, "--p", "1879", "--q", "198301", "--N", "13",
                        "compat")
    assert code == 0
    assert out.strip().splitlines()[1] == "13,true,true,true"
    assert max_compatible_N(pair, cap=30, tol=1e-12) == 21
    print("PASS: criterion 3 (pair compatible at 13; largest ordered level "
          "is 21)")


def test_criterion_4_verification_and_exceptional_counts(capsys, cache_dir):
    for n in range(1, 14):
        code, out = run_cli(capsys, "--cache-dir", str(cache_dir),
                            "verify", "--n", str(n))
        assert code == 0, f"verify failed at level {n}:\n{out}"
    code, out = run_cli(capsys, "--cache-dir", str(cache_dir),
                        "exceptional", "--n", "13")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "count,11"
    assert len(lines) == 13  # count + header + 11 breakpoints
    code, out = run_cli(capsys, "--cache-dir", str(cache_dir),
                        "exceptional", "--n", "7")
    assert code == 0
    assert out.strip().splitlines()[0] == "count,5"
    print("PASS: criterion 4 (levels 1..13 certified; 11 and 5 exceptional "
          "points)")


def test_criterion_5_factorization_rigidity(fib13):
    fs = enumerate_factorizations(pad((1, 0, 0, 4), N), 7, N, fib13)
    assert len(fs) == 2
    print("PASS: criterion 5 (exactly 2 factorizations of the level-7 "
          "extra point)")


def test_criterion_6_vertex_filter(chain12):
    report = vertex_filter(list(chain12[10].members))
    flagged = {trim(v) for v in report.non_vertices}
    assert flagged == {(1, 0, 0, 1, 0, 8, 0, 1), (1, 0, 0, 2, 0, 5, 0, 2)}
    for z, witness in report.non_vertices.items():
        comps = [c for c, _ in witness]
        weights = [w for _, w in witness]
        assert check_witness(z, comps, weights)
    # the known closed-form witnesses must also validate
    a = pad((1, 0, 0, 0, 0, 11), N)
    b = pad((1, 0, 0, 3, 0, 2, 0, 3), N)
    assert check_witness(pad((1, 0, 0, 1, 0, 8, 0, 1), N), [a, b],
                         [F(2, 3), F(1, 3)])
    assert check_witness(pad((1, 0, 0, 2, 0, 5, 0, 2), N), [a, b],
                         [F(1, 3), F(2, 3)])
    print("PASS: criterion 6 (both level-11 non-vertices flagged; closed-form "
          "witnesses validate)")


def test_criterion_7_property_suites_configured():
    # the randomized suites themselves run in test_properties.py; this
    # gate checks that each is configured for >= 1000 cases
    import test_properties as props

    suites = [name for name in dir(props) if name.startswith("test_")]
    assert len(suites) >= 6
    for name in suites:
        fn = getattr(props, name)
        assert fn._hypothesis_internal_use_settings.max_examples >= 1000, name
    print("PASS: criterion 7 (6 randomized suites at >= 1000 cases each; "
          "executed in test_properties.py)")


def _s_restricted_by_definition(n, fib):
    """Brute-force oracle straight from the definition: keep z in C_n whose
    factorizations with two or more parts use only generator parts."""
    gen_pool = {v for i in range(1, n + 1) for v in build_S(i, N, fib).members}
    kept = []
    for z in enumerate_C(n, N, fib).members:
        ok = True
        for f in enumerate_factorizations(z, n, N, fib):
            if len(f) >= 2 and any(part not in gen_pool for part in f):
                ok = False
                break
        if ok:
            kept.append(z)
    return sorted(kept)


def test_criterion_8_restricted_oracle_equivalence(fib13, chain12):
    for n in range(1, 10):
        assert list(chain12[n - 1].members) == \
            _s_restricted_by_definition(n, fib13), f"level {n}"
    print("PASS: criterion 8 (inductive restricted sets equal the "
          "definition-level computation for n <= 9)")


def test_criterion_9_envelope_minimizer_unique(pair, coeffs, fib13):
    rng = random.Random(20240823)
    for n in (7, 10, 13):
        env = build_envelope(n, pair, coeffs, fib=fib13)
        bvals = [float(bp.value) for bp in env.breakpoints]
        checked = 0
        while checked < 256:
            t = rng.uniform(0.05, 12.0)
            if min(abs(t - b) for b in bvals) < 1e-6:
                continue
            best, arg = env.min_over_generators(t, fib13)
            assert len(arg) == 1, (n, t, arg)
            assert arg[0] == env.segment_generator(t)
            checked += 1
    print("PASS: criterion 9 (unique minimizer at 256 random t for "
          "n in {7, 10, 13})")
