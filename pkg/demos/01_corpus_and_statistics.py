"""Parse an annotated corpus, watch the augmentation passes fill in missing
links, and read off link probability and entity priors.

Run: python3 demos/01_corpus_and_statistics.py
"""
from qel import compute_link_stats, lp, parse_corpus_lines, prior

LINES = [
    "Austin (song)\tregular\t[[Austin (song)|Austin]] is a song by [[Blake Shelton]].",
    "Austin (song)\tregular\tAustin lyrics were written by Kent.",
    "Blake Shelton\tregular\t[[Blake Shelton]] sang [[Austin (song)|Austin]] live.",
    "Blake Shelton\tregular\tBlake Shelton was born in Ada.",
    "Austin, Texas\tregular\t[[Austin, Texas|Austin]] is a city in [[Texas]].",
    "Austin (disambiguation)\tdisambiguation\t[[Austin (song)]] a song by Blake Shelton",
]

corpus = parse_corpus_lines(LINES)
print(f"{len(corpus.pages)} pages, {corpus.sentence_count} sentences, "
      f"{corpus.annotation_count} annotations after augmentation\n")

# Sentences on a page that mention the page title (or an anchor already
# linked earlier on the page) gain annotations marked with their source.
for sent in corpus.sentences():
    added = [f"{a.anchor}->{a.entity} ({a.source})" for a in sent.annotations
             if a.source != "markup"]
    print(f"{sent.page_title:25s} {sent.text}")
    if added:
        print(f"{'':25s}   + {', '.join(added)}")

stats = compute_link_stats(corpus)
print()
for anchor in ("austin", "blake shelton", "texas"):
    print(f"lp({anchor!r}) = {stats.link[anchor]}/{stats.freq[anchor]} = {lp(stats, anchor):.3f}")
for entity in ("Austin (song)", "Austin, Texas"):
    print(f"prior({entity!r} | 'austin') = {prior(stats, 'austin', entity):.3f}")
