"""semigroup/semigroup_core/words.py - Words over generator indices.
INPUT: index tuples / bracket text | OUTPUT: Word values, ordered enumerations

Notation: [1,0,0] means g1 o g0 o g0; the rightmost index acts first.
The empty word is the identity of G-hat.
"""
import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from config.settings import MAX_WORD_LEN, MAX_WORDS
from utils.budget import check_cap
from utils.errors import ConfigError


@dataclass(frozen=True, order=True)
class Word:
    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))

    @property
    def counts(self) -> Counter:
        return Counter(self.indices)

    def count(self, i: int) -> int: return self.indices.count(i)

    @property
    def is_identity(self) -> bool: return not self.indices

    def __len__(self): return len(self.indices)

    def __mul__(self, other: "Word") -> "Word":
        """w1 * w2 is the composition w1 o w2."""
        return Word(self.indices + other.indices)

    def __str__(self): return format_word(self)


IDENTITY = Word(())


def format_word(w: Word) -> str:
    return "[" + ",".join(str(i) for i in w.indices) + "]"


def parse_word(text, n_generators: int = 0, field: str = "word") -> Word:
    """Accepts "[1,0]" text or an already-decoded list of ints."""
    if isinstance(text, str):
        try: seq = json.loads(text)
        except json.JSONDecodeError as exc: raise ConfigError(f"malformed word {text!r}", field) from exc
    else:
        seq = text
    if not isinstance(seq, (list, tuple)) or not all(isinstance(i, int) and not isinstance(i, bool) for i in seq):
        raise ConfigError(f"word must be a list of generator indices, got {text!r}", field)
    if n_generators and any(i < 0 or i >= n_generators for i in seq):
        raise ConfigError(f"word {list(seq)} uses an index outside 0..{n_generators - 1}", field)
    return Word(tuple(seq))


def _check_enumeration(n_generators: int, max_len: int):
    if max_len < 0: raise ConfigError(f"max_len must be >= 0, got {max_len}", "max_len")
    check_cap("word length", max_len, MAX_WORD_LEN)
    check_cap("word count", n_generators ** max_len, MAX_WORDS)


def words_of_length(n_generators: int, length: int) -> Iterable[Word]:
    for t in itertools.product(range(n_generators), repeat=length):
        yield Word(t)


def enumerate_words(n_generators, max_len: int) -> List[Word]:
    """Every word of length 0..max_len, length first then lexicographic; identity first."""
    n = getattr(n_generators, "n", n_generators)
    _check_enumeration(n, max_len)
    return [w for k in range(max_len + 1) for w in words_of_length(n, k)]


def expand_schedule(spec, n_generators: int, field: str = "g_schedule") -> List[Word]:
    """'all:k' -> every nonempty word up to length k; otherwise a list of index lists."""
    if isinstance(spec, str):
        if not spec.startswith("all:"):
            raise ConfigError(f"schedule must be 'all:k' or a list of words, got {spec!r}", field)
        try: k = int(spec[4:])
        except ValueError as exc: raise ConfigError(f"bad length in {spec!r}", field) from exc
        if k < 1: raise ConfigError("schedule length must be >= 1", field)
        return enumerate_words(n_generators, k)[1:]
    if not isinstance(spec, Sequence) or not spec:
        raise ConfigError("schedule must be nonempty", field)
    words = [parse_word(w, n_generators, field) for w in spec]
    if any(w.is_identity for w in words):
        raise ConfigError("schedule words must be nonempty (g ranges over G, not G-hat)", field)
    return words
