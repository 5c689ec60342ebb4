"""Annotated-sentence corpus: parsing, augmentation and loading.

Corpus files are UTF-8, one sentence per line::

    page_title <TAB> kind <TAB> sentence with [[Entity|anchor]] markup

``kind`` is one of ``regular``, ``disambiguation`` or ``infobox``. Lines
starting with ``#`` and blank lines are skipped.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

from .text import normalize_title, title_surface, tokenize, tokenize_spans

KINDS = ("regular", "disambiguation", "infobox")


class CorpusFormatError(ValueError):
    """Malformed markup or corpus line."""

    def __init__(self, message, line_no=None, offset=None):
        self.line_no = line_no
        self.offset = offset
        where = []
        if line_no is not None:
            where.append(f"line {line_no}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class Annotation:
    """One anchor -> entity link inside a sentence.

    `token_span` and `char_span` are half-open. `raw` holds the exact
    original markup for parsed links and is None for links added by
    augmentation. `source` records where the link came from.
    """
    anchor: str
    entity: str
    token_span: tuple
    char_span: tuple
    raw: Optional[str] = None
    source: str = "markup"


@dataclass(frozen=True)
class AnnotatedSentence:
    page_title: str
    text: str
    annotations: tuple = ()
    kind: str = "regular"
    tokens: tuple = field(default=(), compare=False)
    offsets: tuple = field(default=(), compare=False, repr=False)

    def anchor_tokens(self, ann):
        s, e = ann.token_span
        return self.tokens[s:e]

    def entities(self):
        return {a.entity for a in self.annotations}

    def with_annotations(self, annotations):
        ordered = tuple(sorted(annotations, key=lambda a: a.token_span))
        return replace(self, annotations=ordered)

    def to_markup(self):
        """Re-insert link markup into the plain text."""
        parts = []
        pos = 0
        for ann in sorted(self.annotations, key=lambda a: a.char_span):
            cs, ce = ann.char_span
            parts.append(self.text[pos:cs])
            if ann.raw is not None:
                parts.append(ann.raw)
            elif ann.anchor == ann.entity:
                parts.append(f"[[{ann.entity}]]")
            else:
                parts.append(f"[[{ann.entity}|{ann.anchor}]]")
            pos = ce
        parts.append(self.text[pos:])
        return "".join(parts)


@dataclass(frozen=True)
class Page:
    title: str
    sentences: tuple = ()


@dataclass(frozen=True)
class Corpus:
    pages: tuple = ()

    @property
    def sentence_count(self):
        return sum(len(p.sentences) for p in self.pages)

    @property
    def annotation_count(self):
        return sum(len(s.annotations) for p in self.pages for s in p.sentences)

    def sentences(self):
        for page in self.pages:
            yield from page.sentences


def _byte_offset(line, i):
    return len(line[:i].encode("utf-8"))


def _build_sentence(page_title, text, links, kind):
    """Tokenize `text` with breaks at link boundaries and attach links.

    `links` is a list of ``(anchor, entity, char_start, char_end, raw, source)``.
    """
    bounds = [b for link in links for b in link[2:4]]
    spans = tokenize_spans(text, bounds)
    tokens = tuple(t for t, _, _ in spans)
    offsets = tuple((s, e) for _, s, e in spans)
    annotations = []
    for anchor, entity, cs, ce, raw, source in links:
        idx = [i for i, (s, e) in enumerate(offsets) if s >= cs and e <= ce]
        if not idx:
            raise CorpusFormatError(f"link {raw or anchor!r} has no word tokens")
        annotations.append(Annotation(anchor, entity, (idx[0], idx[-1] + 1),
                                      (cs, ce), raw, source))
    annotations.sort(key=lambda a: a.token_span)
    return AnnotatedSentence(page_title, text, tuple(annotations), kind,
                             tokens, offsets)


def parse_annotated_sentence(page_title, line, kind="regular"):
    """Strip ``[[Entity|anchor]]`` / ``[[Entity]]`` markup from `line`.

    Raises CorpusFormatError (with the byte offset) on unbalanced or
    nested brackets and on links whose target or anchor has no tokens.
    """
    text_parts = []
    links = []
    out_len = 0
    i = 0
    n = len(line)
    while i < n:
        open_at = line.find("[[", i)
        close_at = line.find("]]", i)
        if close_at != -1 and (open_at == -1 or close_at < open_at):
            raise CorpusFormatError("unmatched ']]'", offset=_byte_offset(line, close_at))
        if open_at == -1:
            text_parts.append(line[i:])
            break
        text_parts.append(line[i:open_at])
        out_len += open_at - i
        end = line.find("]]", open_at + 2)
        if end == -1:
            raise CorpusFormatError("unclosed '[['", offset=_byte_offset(line, open_at))
        inner = line[open_at + 2:end]
        nested = inner.find("[[")
        if nested != -1:
            raise CorpusFormatError("nested '[['",
                                    offset=_byte_offset(line, open_at + 2 + nested))
        target, sep, anchor = inner.partition("|")
        if not sep:
            anchor = target
        entity = normalize_title(target)
        if not tokenize(entity) or not tokenize(anchor):
            raise CorpusFormatError(f"empty link [[{inner}]]",
                                    offset=_byte_offset(line, open_at))
        raw = line[open_at:end + 2]
        links.append((anchor, entity, out_len, out_len + len(anchor), raw, "markup"))
        text_parts.append(anchor)
        out_len += len(anchor)
        i = end + 2
    text = "".join(text_parts)
    return _build_sentence(normalize_title(page_title), text, links, kind)


def _overlaps(span, spans):
    s, e = span
    return any(s < oe and os < e for os, oe in spans)


def _occurrences(tokens, pattern, blocked):
    """Greedy left-to-right non-overlapping occurrences of `pattern`
    that avoid every span in `blocked` (which is extended in place)."""
    n = len(pattern)
    pattern = tuple(pattern)
    found = []
    i = 0
    while n and i + n <= len(tokens):
        span = (i, i + n)
        if tuple(tokens[i:i + n]) == pattern and not _overlaps(span, blocked):
            found.append(span)
            blocked.append(span)
            i += n
        else:
            i += 1
    return found


def _new_annotation(sent, span, entity, source):
    s, e = span
    cs, ce = sent.offsets[s][0], sent.offsets[e - 1][1]
    return Annotation(sent.text[cs:ce], entity, span, (cs, ce), None, source)


def augment_title_annotations(page):
    """Link unannotated mentions of the page's own title to the page."""
    pattern = tokenize(title_surface(page.title))
    if not pattern:
        return page
    sentences = []
    for sent in page.sentences:
        blocked = [a.token_span for a in sent.annotations]
        spans = _occurrences(sent.tokens, pattern, blocked)
        if spans:
            extra = [_new_annotation(sent, sp, page.title, "title") for sp in spans]
            sent = sent.with_annotations(sent.annotations + tuple(extra))
        sentences.append(sent)
    return replace(page, sentences=tuple(sentences))


def propagate_first_mention(page):
    """Link later plain mentions of anchors already linked earlier on the page.

    An anchor mapped to several entities resolves to its most recent prior
    mapping. Longer anchors are matched first.
    """
    mapping = {}
    sentences = []
    for sent in page.sentences:
        if mapping:
            blocked = [a.token_span for a in sent.annotations]
            extra = []
            for anchor in sorted(mapping, key=lambda t: (-len(t), t)):
                for sp in _occurrences(sent.tokens, anchor, blocked):
                    extra.append(_new_annotation(sent, sp, mapping[anchor], "propagated"))
            if extra:
                sent = sent.with_annotations(sent.annotations + tuple(extra))
        for ann in sorted(sent.annotations, key=lambda a: a.token_span):
            mapping[sent.anchor_tokens(ann)] = ann.entity
        sentences.append(sent)
    return replace(page, sentences=tuple(sentences))


def resolve_coreferences(page):
    """Extension point for pronoun coreference linking; currently a no-op."""
    return page


def augment_page(page):
    return propagate_first_mention(resolve_coreferences(augment_title_annotations(page)))


def parse_corpus_lines(lines, workers=1):
    """Parse corpus records from an iterable of lines and augment each page."""
    grouped = {}
    for line_no, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t", 2)
        if len(fields) != 3:
            raise CorpusFormatError("expected 3 tab-separated fields", line_no=line_no)
        title, kind, body = fields
        if kind not in KINDS:
            raise CorpusFormatError(f"unknown kind {kind!r}", line_no=line_no)
        if not tokenize(title):
            raise CorpusFormatError("empty page title", line_no=line_no)
        try:
            sent = parse_annotated_sentence(title, body, kind)
        except CorpusFormatError as exc:
            raise CorpusFormatError(str(exc), line_no=line_no) from None
        grouped.setdefault(sent.page_title, []).append(sent)
    pages = [Page(title, tuple(sents)) for title, sents in grouped.items()]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            pages = list(pool.map(augment_page, pages))
    else:
        pages = [augment_page(p) for p in pages]
    return Corpus(tuple(pages))


def load_corpus(path, workers=1):
    with open(path, encoding="utf-8") as fh:
        return parse_corpus_lines(fh, workers=workers)


def sentence_to_json(sent):
    return {
        "page": sent.page_title,
        "kind": sent.kind,
        "text": sent.text,
        "ann": [[a.anchor, a.entity, a.char_span[0], a.char_span[1], a.raw, a.source]
                for a in sent.annotations],
    }


def sentence_from_json(obj):
    links = [tuple(item) for item in obj["ann"]]
    return _build_sentence(obj["page"], obj["text"], links, obj["kind"])
