import pytest
from hypothesis import given, strategies as st

from qel import GoldQuery, average_f1, query_f1
from qel.evaluate import read_dataset, write_dataset


@pytest.mark.parametrize("gold,hyp,expected", [
    (set(), set(), (1.0, 1.0, 1.0)),
    ({"e1"}, {"e1"}, (1.0, 1.0, 1.0)),
    ({"e1"}, {"e1", "e2"}, (0.5, 1.0, 2 / 3)),
    ({"e1"}, set(), (1.0, 0.0, 0.0)),
    (set(), {"e1"}, (0.0, 1.0, 0.0)),
    ({"e1"}, {"e2"}, (0.0, 0.0, 0.0)),
])
def test_query_f1(gold, hyp, expected):
    assert query_f1(gold, hyp) == pytest.approx(expected, abs=1e-12)


def test_average():
    ds = [GoldQuery("a", frozenset({"X"})), GoldQuery("b", frozenset({"Y"}))]
    rep = average_f1(ds, [{"X"}, {"Z"}])
    assert rep.average_f1 == 0.5


def test_empty_dataset():
    with pytest.raises(ValueError):
        average_f1([], [])


def test_length_mismatch():
    with pytest.raises(ValueError):
        average_f1([GoldQuery("a", frozenset())], [])


def test_five_queries_by_hand():
    ds = [GoldQuery("q1", frozenset({"A"})),
          GoldQuery("q2", frozenset({"A", "B"})),
          GoldQuery("q3", frozenset()),
          GoldQuery("q4", frozenset()),
          GoldQuery("q5", frozenset({"C", "D", "E"}))]
    hyp = [{"A"}, {"A"}, set(), {"X"}, {"C", "Y"}]
    rep = average_f1(ds, hyp)
    # q1 (1,1,1)  q2 (1,.5,2/3)  q3 (1,1,1)  q4 (0,1,0)  q5 (.5,1/3,.4)
    assert rep.average_precision == pytest.approx((1 + 1 + 1 + 0 + 0.5) / 5)
    assert rep.average_recall == pytest.approx((1 + 0.5 + 1 + 1 + 1 / 3) / 5)
    assert rep.average_f1 == pytest.approx((1 + 2 / 3 + 1 + 0 + 0.4) / 5)
    assert "F1: 0.6133" in rep.summary()
    assert rep.to_tsv().splitlines()[-1].startswith("AVERAGE\t")


sets = st.frozensets(st.sampled_from("abcdef"), max_size=4)


@given(sets, sets)
def test_metric_properties(g, h):
    p, r, f = query_f1(g, h)
    assert 0 <= f <= max(p, r) <= 1
    if g and h:
        assert query_f1(h, g)[0] == r and query_f1(h, g)[1] == p
    assert query_f1(g, list(h) + list(h)) == (p, r, f)


def test_dataset_io(tmp_path):
    p = tmp_path / "d.tsv"
    p.write_text("# comment\nblake shelton austin\tAustin (song);Blake_Shelton\nempty query\t\n"
                 "no tab at all\n", encoding="utf-8")
    ds = read_dataset(p)
    assert ds[0].gold == {"Austin (song)", "Blake Shelton"}
    assert ds[1].gold == frozenset() and ds[2].gold == frozenset()
    out = tmp_path / "o.tsv"
    write_dataset(out, ds)
    assert out.read_text().splitlines()[0] == "blake shelton austin\tAustin (song);Blake Shelton"
