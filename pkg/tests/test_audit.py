import pytest

from distoracle.audit import ALL_PAIRS_LIMIT, PairSample, audit_size, audit_stretch
from distoracle.composite import BuildConfig, build_oracle, build_plain_tz, build_small_k
from distoracle.exact import exact_oracle
from distoracle.exception import SizeGuardError
from distoracle.graph import Graph
from distoracle.tz import build_tz


class ShortOracle:
    """Answers one less than the truth."""

    stretch_bound = 3

    def __init__(self, g: Graph) -> None:
        self.exact = exact_oracle(g)

    def query(self, u: int, v: int) -> int:
        return max(self.exact.query(u, v) - 1, 0)


class LongOracle(ShortOracle):
    def query(self, u: int, v: int) -> int:
        return 4 * self.exact.query(u, v)


def test_exact_oracle_has_stretch_one(random_graph):
    g = random_graph(40)
    report = audit_stretch(exact_oracle(g), g, PairSample.all_pairs(g.n))
    assert report.max_stretch == 1.0
    assert report.mean_stretch == 1.0
    assert report.passed
    assert report.size is None


def test_all_pairs_guard():
    assert len(PairSample.all_pairs(5).pairs) == 10
    with pytest.raises(SizeGuardError):
        PairSample.all_pairs(ALL_PAIRS_LIMIT + 1)


def test_sampled_pairs():
    a = PairSample.sampled(50, 200, seed=3)
    assert a == PairSample.sampled(50, 200, seed=3)
    assert a.mode == "sampled"
    assert len(a.pairs) == 200
    assert all(u != v and 0 <= u < 50 and 0 <= v < 50 for u, v in a.pairs)
    assert PairSample.sampled(1, 10, seed=0).pairs == ()


def test_parse_pair_spec():
    assert PairSample.parse("all", 4).mode == "all"
    assert len(PairSample.parse("sample=7", 20, seed=1).pairs) == 7
    with pytest.raises(ValueError):
        PairSample.parse("some", 4)


def test_below_exact_is_a_violation(random_graph):
    g = random_graph(20)
    report = audit_stretch(ShortOracle(g), g, PairSample.all_pairs(g.n))
    assert not report.passed
    assert {v["kind"] for v in report.violations} == {"below-exact"}
    assert len(report.violations) == report.pairs_audited


def test_over_bound_is_a_violation(random_graph):
    g = random_graph(20)
    report = audit_stretch(LongOracle(g), g, PairSample.sampled(g.n, 30, seed=0))
    assert {v["kind"] for v in report.violations} == {"over-bound"}
    assert report.max_stretch == 4.0
    assert report.to_dict()["passed"] is False


def test_tz_two_levels(random_graph):
    g = random_graph(128, seed=2)
    report = audit_stretch(build_tz(g, 2, seed=2), g, PairSample.all_pairs(g.n))
    assert report.passed
    assert report.max_stretch <= 3


def test_per_source_dijkstra_matches_table(random_graph):
    g = random_graph(64, seed=1)
    oracle = build_small_k(g, 3, seed=1)
    pairs = PairSample.sampled(g.n, 300, seed=2)
    with_table = audit_stretch(oracle, g, pairs, exact_oracle(g))
    without = audit_stretch(oracle, g, pairs)
    assert with_table.max_stretch == without.max_stretch
    assert with_table.violations == without.violations == []


def test_estimate_wins_cover_every_pair(random_graph):
    g = random_graph(64, seed=4)
    report = audit_stretch(build_small_k(g, 6, seed=4), g, PairSample.all_pairs(g.n))
    assert sum(report.estimate_wins.values()) == report.pairs_audited
    assert report.params["k_prime"] == 2
    assert "audit" in report.timings and "tz" in report.timings


def test_size_kappa_one_counts_full_bunches(random_graph):
    g = random_graph(30)
    size = audit_size(build_tz(g, 1, seed=0))
    assert size.entries["bunches"] == 30 * 30
    size = audit_size(build_plain_tz(g, 1, seed=0))
    assert size.entries["bunches"] == 30 * 30
    assert size.restricted_entries is None


def test_size_small_k_counts_table_cells(random_graph):
    oracle = build_small_k(random_graph(100, seed=1), 6, seed=1)
    size = audit_size(oracle)
    samples = len(oracle.assignment.samples)
    assert size.entries["far_cells"] == samples**2
    assert size.entries["samples"] == 200
    assert size.entries["total"] == sum(v for key, v in size.entries.items() if key != "total")


def test_size_restricted_budget(random_graph):
    g = random_graph(100, seed=1)
    size = audit_size(build_tz(g, 2, seed=1, restriction=range(10)))
    assert size.restricted_entries == size.entries["total"]
    assert size.restricted_budget == pytest.approx(10 * 2 * 10 * 100**0.5)


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["tz", "warmup", "small-k", "near-linear"])
def test_mean_entries_within_budget(random_graph, kind):
    g = random_graph(512, seed=0)
    totals, restricted = [], []
    for seed in range(50):
        size = audit_size(build_oracle(g, BuildConfig(kind, 6, seed=seed)))  # type: ignore[arg-type]
        totals.append(size.entries["total"])
        if size.restricted_entries is not None:
            restricted.append(size.restricted_entries <= size.restricted_budget)
    assert sum(totals) / len(totals) <= size.budget
    assert all(restricted)
