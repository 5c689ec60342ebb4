"""Token normalization shared by every stage of the linker.

Anchors, queries, titles and indexed sentences all go through the same
tokenizer so that "occurs in the query" means the same thing everywhere.
"""
import re

# word characters minus underscore; everything else is a separator
_TOKEN_RE = re.compile(r"[^\W_]+")
_PAREN_RE = re.compile(r"\s*\([^()]*\)\s*$")
_SPACE_RE = re.compile(r"\s+")


def tokenize(text):
    """Lowercased tokens of `text`."""
    return [m.group().lower() for m in _TOKEN_RE.finditer(text)]


def tokenize_spans(text, boundaries=()):
    """Tokens of `text` with their character spans.

    Any offset in `boundaries` forces a token break, so a markup boundary
    falling inside a word (``[[Dog]]s``) still yields aligned tokens.
    Returns a list of ``(token, start, end)``.
    """
    cuts = sorted(set(boundaries))
    out = []
    for m in _TOKEN_RE.finditer(text):
        start, end = m.span()
        pieces = [start] + [b for b in cuts if start < b < end] + [end]
        for s, e in zip(pieces, pieces[1:]):
            out.append((text[s:e].lower(), s, e))
    return out


def normalize_title(title):
    """Canonical entity title: underscores as spaces, single spaces,
    first character uppercased (Wikipedia convention)."""
    title = _SPACE_RE.sub(" ", title.replace("_", " ")).strip()
    if not title:
        return title
    return title[0].upper() + title[1:]


def title_surface(title):
    """Title without a trailing parenthetical disambiguator.

    >>> title_surface("Austin (song)")
    'Austin'
    """
    stripped = _PAREN_RE.sub("", title)
    return stripped if tokenize(stripped) else title


def find_subsequence(haystack, needle, start=0):
    """Index of the first contiguous occurrence of `needle` at or after
    `start`, or -1."""
    n = len(needle)
    if n == 0:
        return -1
    first = needle[0]
    for i in range(start, len(haystack) - n + 1):
        if haystack[i] == first and tuple(haystack[i:i + n]) == tuple(needle):
            return i
    return -1


def contains_subsequence(haystack, needle):
    return find_subsequence(haystack, needle) >= 0


def is_proper_subsequence(short, long):
    """True if `short` is a contiguous token run inside `long` and shorter."""
    return len(short) < len(long) and contains_subsequence(long, short)
