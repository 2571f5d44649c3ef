"""Text utilities: normalization, dictionary tokenization, TF-IDF, Dice.

The tokenizer does greedy longest-match segmentation against a bundled
domain dictionary; uncovered CJK characters become single-character tokens
and ASCII runs split on non-alphanumerics.  Stopwords are removed last.
"""

from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple


def normalize(text: str) -> str:
    """Trim, convert full-width digits/punctuation to half-width, lowercase ASCII."""
    out = []
    for ch in text.strip():
        code = ord(ch)
        if code == 0x3000:
            ch = " "
        elif 0xFF01 <= code <= 0xFF5E:
            # full-width block: convert digits and punctuation, keep letters
            if not (0xFF21 <= code <= 0xFF3A or 0xFF41 <= code <= 0xFF5A):
                ch = chr(code - 0xFEE0)
        out.append(ch.lower() if ch.isascii() else ch)
    return "".join(out)


def _is_separator(ch: str) -> bool:
    if ch.isspace():
        return True
    return unicodedata.category(ch)[0] in ("P", "S")


@dataclass
class Tokenizer:
    dictionary: Set[str]
    stopwords: Set[str]

    def __post_init__(self):
        self._max_word = max((len(w) for w in self.dictionary), default=1)

    def tokenize(self, text: str) -> List[str]:
        text = normalize(text)
        tokens: List[str] = []
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if _is_separator(ch):
                i += 1
                continue
            if ch.isascii() and ch.isalnum():
                j = i
                while j < n and text[j].isascii() and text[j].isalnum():
                    j += 1
                tokens.append(text[i:j])
                i = j
                continue
            matched = None
            for length in range(min(self._max_word, n - i), 1, -1):
                candidate = text[i : i + length]
                if candidate in self.dictionary:
                    matched = candidate
                    break
            if matched:
                tokens.append(matched)
                i += len(matched)
            else:
                tokens.append(ch)
                i += 1
        return [t for t in tokens if t not in self.stopwords]


def string_similarity(a: Sequence[str], b: Sequence[str]) -> float:
    """Dice coefficient over token sets; 0.0 when both are empty."""
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 0.0
    return 2 * len(sa & sb) / (len(sa) + len(sb))


def tfidf_keywords(
    corpus: Sequence[Sequence[str]], doc_index: int, k: int
) -> List[Tuple[str, float]]:
    """Top-k TF-IDF terms of document ``doc_index`` (1-based).

    score(t) = (count(t, doc) / |doc|) * ln(N / df(t)); ties break by term
    byte order.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    if not corpus:
        raise ValueError("corpus is empty")
    if not 1 <= doc_index <= len(corpus):
        raise ValueError(f"doc_index {doc_index} out of range 1..{len(corpus)}")
    doc = list(corpus[doc_index - 1])
    if not doc:
        return []
    n_docs = len(corpus)
    doc_sets = [set(d) for d in corpus]
    counts: Dict[str, int] = {}
    for t in doc:
        counts[t] = counts.get(t, 0) + 1
    scored = []
    for term, count in counts.items():
        df = sum(1 for s in doc_sets if term in s)
        score = (count / len(doc)) * math.log(n_docs / df)
        scored.append((term, score))
    scored.sort(key=lambda item: (-item[1], item[0].encode("utf-8")))
    return scored[:k]
