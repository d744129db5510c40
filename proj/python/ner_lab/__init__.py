"""Python access to the ner_lab core: scoring, grouping, encoding and the CLI."""

import json
from typing import Dict, List, Sequence, Tuple, Union

from . import _nerlab
from ._nerlab import (
    AlignmentError,
    ConfigError,
    ParseError,
    UndefinedInputError,
    ValidationError,
    extract_chunks,
    ratcliff_similarity,
)

__version__ = _nerlab.__version__

Corpus = Union[str, dict]


def _text(corpus: Corpus) -> str:
    return corpus if isinstance(corpus, str) else json.dumps(corpus, ensure_ascii=False)


def load_corpus(path: str) -> dict:
    """Reads and validates a corpus file."""
    with open(path, encoding="utf-8") as f:
        return json.loads(_nerlab.canonical_corpus(f.read()))


def dump_corpus(corpus: Corpus) -> str:
    """Canonical serialization, byte-identical to the C++ writer."""
    return _nerlab.canonical_corpus(_text(corpus))


def group_mentions(surfaces: Sequence[str], threshold: float = 0.8) -> List[dict]:
    return json.loads(_nerlab.group_mentions(list(surfaces), threshold))


def chunk_prf(gold: Sequence[Sequence[str]], pred: Sequence[Sequence[str]]) -> dict:
    """Chunk precision/recall/F1; one inner sequence of tags per sentence."""
    return json.loads(_nerlab.chunk_prf([list(s) for s in gold], [list(s) for s in pred]))


def agreement(annotations: Dict[str, Corpus], span: str = "strict", tag: str = "strict") -> dict:
    """Agreement between annotators given as name -> corpus."""
    names = list(annotations)
    return json.loads(_nerlab.agreement([_text(annotations[n]) for n in names], names, span, tag))


def coref(gold: Corpus, pred: Corpus) -> dict:
    return json.loads(_nerlab.coref(_text(gold), _text(pred)))


def encode_bio(corpus: Corpus, layer: str) -> List[List[str]]:
    return _nerlab.encode_bio(_text(corpus), layer)


def stats(corpus: Corpus) -> dict:
    return json.loads(_nerlab.stats(_text(corpus)))


def run_cli(args: Sequence[str]) -> Tuple[int, str, str]:
    code, out, err = _nerlab.run_cli([str(a) for a in args])
    return code, out.decode("utf-8"), err.decode("utf-8")
