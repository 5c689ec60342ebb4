"""Search the sentence index for a query, back-map the annotations in the
hits to (anchor, entity) pairs, and prune them.

Run: python3 demos/02_search_and_candidates.py
"""
from qel import (build_index, generate_candidates, parse_corpus_lines, prune_long_string,
                 prune_title_match, search)
from qel.candgen import extract_pairs, partition_candidates

LINES = [
    "Mesa Community College\tregular\t[[Mesa Community College]] fields a football team.",
    "Mesa Community College\tregular\t[[Mesa Community College]] football won in 1975.",
    "Mesa Community College\tregular\tThe [[Mesa Community College]] campus is in "
    "[[Mesa, Arizona|Mesa]].",
    "Mesa, Arizona\tregular\t[[Mesa, Arizona|Mesa]] is a city near Phoenix.",
    "Community college\tregular\tA [[community college]] offers two year degrees.",
    "College football\tregular\t[[College football]] is played by [[college]] teams.",
]
QUERY = "mesa community college football"

index = build_index(parse_corpus_lines(LINES))
hits = search(index, QUERY, K=10)
print(f"query: {QUERY!r}\n")
for h in hits:
    print(f"  #{h.sentence_id}  {h.score:.4f}  {h.sentence.to_markup()}")

pairs = extract_pairs(hits)
print("\nall pairs in the hits (w = sentences containing the pair):")
for (a, e), c in sorted(pairs.items()):
    print(f"  {a!r:28s} -> {e:25s} w={c.w}")

cs = partition_candidates(pairs, QUERY)
after_long = prune_long_string(cs)
final = prune_title_match(after_long, QUERY)
print(f"\nanchors in the query: {len(cs.candidates)} candidates")
print(f"after long-string match: {[c.key for c in after_long.candidates]}")
print(f"after title match:       {[c.key for c in final.candidates]}")
print(f"related (context) entities: {sorted(r.entity for r in final.related)}")

# generate_candidates runs the same steps in one call
assert generate_candidates(hits, QUERY) == final
