"""Text pipeline: tokenizer, sentence splitter, Porter stemmer, stopwords, match units.

Queries, taxonomy names, and document text all pass through the same
normalization so matching stays symmetric.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .config import PipelineConfig

if TYPE_CHECKING:  # pragma: no cover
    from .ingest import PositionedToken

# A token is a maximal run of letters/digits, with internal hyphens kept.
_TOKEN_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*", re.UNICODE)


def tokenize(text: str) -> list[tuple[str, int]]:
    """Return (surface, offset) pairs with strictly increasing offsets."""
    return [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]


# ---------------------------------------------------------------------------
# Porter stemmer (classic 1980 algorithm). No stemming package exists in this
# environment, so the algorithm is implemented here and pinned by test vectors.

_VOWELS = "aeiou"


def _is_cons(w: str, i: int) -> bool:
    ch = w[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_cons(w, i - 1)
    return True


def _measure(w: str) -> int:
    """Number of vowel-consonant spans: [C](VC)^m[V]."""
    m = 0
    i = 0
    n = len(w)
    while i < n and _is_cons(w, i):
        i += 1
    while i < n:
        while i < n and not _is_cons(w, i):
            i += 1
        if i >= n:
            break
        m += 1
        while i < n and _is_cons(w, i):
            i += 1
    return m


def _has_vowel(w: str) -> bool:
    return any(not _is_cons(w, i) for i in range(len(w)))


def _ends_double_cons(w: str) -> bool:
    return len(w) >= 2 and w[-1] == w[-2] and _is_cons(w, len(w) - 1)


def _ends_cvc(w: str) -> bool:
    if len(w) < 3:
        return False
    return (
        _is_cons(w, len(w) - 3)
        and not _is_cons(w, len(w) - 2)
        and _is_cons(w, len(w) - 1)
        and w[-1] not in "wxy"
    )


_STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]
_STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]
_STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def _longest_rule(w: str, rules: Iterable[tuple[str, str]]) -> tuple[str, str] | None:
    best: tuple[str, str] | None = None
    for suffix, repl in rules:
        if w.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, repl)
    return best


def porter_stem(word: str) -> str:
    w = word.lower()
    if len(w) <= 2:
        return w

    # step 1a
    if w.endswith("sses"):
        w = w[:-2]
    elif w.endswith("ies"):
        w = w[:-2]
    elif w.endswith("ss"):
        pass
    elif w.endswith("s"):
        w = w[:-1]

    # step 1b
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
    else:
        removed = False
        if w.endswith("ed") and _has_vowel(w[:-2]):
            w = w[:-2]
            removed = True
        elif w.endswith("ing") and _has_vowel(w[:-3]):
            w = w[:-3]
            removed = True
        if removed:
            if w.endswith(("at", "bl", "iz")):
                w += "e"
            elif _ends_double_cons(w) and not w.endswith(("l", "s", "z")):
                w = w[:-1]
            elif _measure(w) == 1 and _ends_cvc(w):
                w += "e"

    # step 1c
    if w.endswith("y") and _has_vowel(w[:-1]):
        w = w[:-1] + "i"

    # step 2
    rule = _longest_rule(w, _STEP2)
    if rule is not None:
        stem = w[: -len(rule[0])]
        if _measure(stem) > 0:
            w = stem + rule[1]

    # step 3
    rule = _longest_rule(w, _STEP3)
    if rule is not None:
        stem = w[: -len(rule[0])]
        if _measure(stem) > 0:
            w = stem + rule[1]

    # step 4
    best = None
    for suffix in _STEP4:
        if w.endswith(suffix) and (best is None or len(suffix) > len(best)):
            best = suffix
    if best is not None:
        stem = w[: -len(best)]
        if _measure(stem) > 1 and (best != "ion" or stem.endswith(("s", "t"))):
            w = stem

    # step 5a
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            w = stem

    # step 5b
    if _measure(w) > 1 and _ends_double_cons(w) and w.endswith("l"):
        w = w[:-1]

    return w


# ---------------------------------------------------------------------------
# Word lists


def _read_word_list(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def _load_list(path: str | Path | None, bundled: str) -> frozenset[str]:
    if path is None:
        text = resources.files("fuzzyrank.data").joinpath(bundled).read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return _read_word_list(text)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """One word per line; blank lines and '#' comments ignored."""
    return _load_list(path, "stopwords.txt")


def load_abbreviations(path: str | Path | None = None) -> frozenset[str]:
    return _load_list(path, "abbreviations.txt")


# ---------------------------------------------------------------------------
# Sentence splitting

_CANDIDATE_RE = re.compile(r"[.!?]+[\"'”’)\]]*\s+")
_WORD_BEFORE_RE = re.compile(r"[A-Za-z0-9.\-]+$")


def split_sentences(text: str, abbreviations: frozenset[str]) -> list[tuple[int, int]]:
    """Return (start, end) spans that partition the text into sentences.

    A split happens after terminal punctuation followed by whitespace and an
    uppercase letter or digit, unless the preceding word is a known
    abbreviation or a single letter (an initial).
    """
    if not text:
        return []
    breaks: list[int] = []
    for m in _CANDIDATE_RE.finditer(text):
        nxt = m.end()
        if nxt >= len(text):
            continue
        follow = text[nxt]
        if not (follow.isupper() or follow.isdigit()):
            continue
        before = _WORD_BEFORE_RE.search(text, 0, m.start())
        if before is not None:
            word = before.group().rstrip(".").lower()
            if word in abbreviations:
                continue
            if len(word) == 1 and word.isalpha():
                continue
        breaks.append(nxt)
    spans = []
    start = 0
    for b in breaks:
        spans.append((start, b))
        start = b
    spans.append((start, len(text)))
    return spans


# ---------------------------------------------------------------------------
# Normalization and match units


@dataclass(frozen=True)
class Pipeline:
    """Resolved text pipeline: stemmer mode plus loaded word lists."""

    stemmer: str
    stopwords: frozenset[str]
    abbreviations: frozenset[str]

    def stem(self, word: str) -> str:
        if self.stemmer == "porter":
            return porter_stem(word)
        return word.lower()

    def is_stop(self, surface: str, stem: str | None = None) -> bool:
        if surface.lower() in self.stopwords:
            return True
        if stem is None:
            stem = self.stem(surface)
        return stem in self.stopwords

    def normalize(self, text: str) -> tuple[str, ...]:
        """Tokenize, drop stopwords, and stem. Applied to queries and names."""
        out = []
        for surface, _ in tokenize(text):
            stem = self.stem(surface)
            if not self.is_stop(surface, stem):
                out.append(stem)
        return tuple(out)


def build_pipeline(cfg: PipelineConfig) -> Pipeline:
    return Pipeline(
        stemmer=cfg.stemmer,
        stopwords=load_stopwords(cfg.stopwords_path),
        abbreviations=load_abbreviations(cfg.abbreviations_path),
    )


@dataclass(frozen=True)
class MatchUnit:
    """A candidate match site: one kept token or two adjacent kept tokens."""

    text: str  # stem, or two stems joined by a space
    kind: str  # "unigram" or "bigram"
    token_indices: tuple[int, ...]  # indices into the token list passed in
    sentence_id: int


def make_match_units(
    tokens: Sequence["PositionedToken"], pipe: Pipeline
) -> list[MatchUnit]:
    """Unigrams for every kept token, bigrams for adjacent same-sentence pairs.

    Adjacency is judged after stopword removal, so a stopword between two
    content words does not block their bigram.
    """
    kept = [
        (i, t) for i, t in enumerate(tokens) if not pipe.is_stop(t.surface, t.stem)
    ]
    units = [
        MatchUnit(t.stem, "unigram", (i,), t.sentence_id) for i, t in kept
    ]
    for (i, a), (j, b) in zip(kept, kept[1:]):
        if a.sentence_id == b.sentence_id:
            units.append(
                MatchUnit(f"{a.stem} {b.stem}", "bigram", (i, j), a.sentence_id)
            )
    return units
