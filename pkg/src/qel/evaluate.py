"""Average-F1 over queries, with the ERD empty-set conventions.

An empty hypothesis has precision 1.0 and an empty gold set has recall
1.0, so a system that correctly outputs nothing for an entity-less query
scores F1 = 1.0.
"""
from dataclasses import dataclass

from .text import normalize_title


@dataclass(frozen=True)
class GoldQuery:
    query: str
    gold: frozenset


@dataclass(frozen=True)
class EvalReport:
    per_query: tuple
    average_precision: float
    average_recall: float
    average_f1: float

    def summary(self):
        return (f"queries: {len(self.per_query)}\n"
                f"precision: {self.average_precision:.4f}\n"
                f"recall: {self.average_recall:.4f}\n"
                f"F1: {self.average_f1:.4f}")

    def to_tsv(self, queries=None):
        lines = ["query\tprecision\trecall\tf1"]
        for i, (p, r, f) in enumerate(self.per_query):
            q = queries[i] if queries is not None else str(i)
            lines.append(f"{q}\t{p:.6f}\t{r:.6f}\t{f:.6f}")
        lines.append(f"AVERAGE\t{self.average_precision:.6f}"
                     f"\t{self.average_recall:.6f}\t{self.average_f1:.6f}")
        return "\n".join(lines) + "\n"


def query_f1(gold, hypothesis):
    gold, hyp = set(gold), set(hypothesis)
    hit = len(gold & hyp)
    precision = hit / len(hyp) if hyp else 1.0
    recall = hit / len(gold) if gold else 1.0
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def average_f1(dataset, outputs):
    if len(dataset) != len(outputs):
        raise ValueError(f"{len(dataset)} gold queries but {len(outputs)} outputs")
    if not dataset:
        raise ValueError("average F1 of an empty dataset is undefined")
    rows = tuple(query_f1(g.gold, h) for g, h in zip(dataset, outputs))
    n = len(rows)
    return EvalReport(rows,
                      sum(r[0] for r in rows) / n,
                      sum(r[1] for r in rows) / n,
                      sum(r[2] for r in rows) / n)


def parse_entity_list(field):
    return frozenset(normalize_title(e) for e in field.split(";") if e.strip())


def read_dataset(path):
    """Read ``query <TAB> e1;e2;...`` lines; '#' lines are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            query, _, ents = line.partition("\t")
            out.append(GoldQuery(query, parse_entity_list(ents)))
    return out


def format_annotation(query, entities):
    return f"{query}\t{';'.join(sorted(entities))}"


def write_dataset(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(format_annotation(row.query, row.gold) + "\n")
