"""Build the pre-tokenized keyword fixture from keyword_corpus_source.txt.

Text pipeline (development only; the package itself never tokenizes):
  lowercase -> split on non-alphanumerics -> keep words whose lexicon tag is a
  noun or adjective -> Porter stem (nltk).
Gold keyphrases are split into words, stop words dropped, then stemmed; they
are not tag-filtered.

Tagging is a unigram lookup in Brill's lexicon (shipped with the pattern3
distribution); words missing from the lexicon are treated as nouns, the
usual default for unknown words in that tagger.

usage: python tools/build_keyword_fixture.py [--lexicon PATH] [--out tests/data/keywords]
"""

import argparse
import re
from pathlib import Path

from nltk.stem import PorterStemmer
from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

KEEP = {"NN", "NNS", "NNP", "NNPS", "JJ", "JJR", "JJS"}
HERE = Path(__file__).resolve().parent


def default_lexicon():
    import importlib.util

    spec = importlib.util.find_spec("pattern3")
    if spec is None:
        raise SystemExit("pass --lexicon (pattern3 not installed)")
    return Path(spec.origin).parent / "text" / "en" / "en-lexicon.txt"


def load_lexicon(path):
    lex = {}
    for line in open(path, encoding="utf-8"):
        if line.startswith(";;;") or not line.strip():
            continue
        parts = line.split()
        if len(parts) >= 2:
            lex.setdefault(parts[0].lower(), parts[1])
    return lex


def words(text):
    return [w for w in re.split(r"[^a-z0-9]+", text.lower()) if w and not w.isdigit()]


def parse_source(path):
    docs, cur = [], None
    for line in open(path, encoding="utf-8"):
        line = line.rstrip("\n")
        if line.startswith("# ") or not line.strip():
            continue
        if line.startswith("## "):
            cur = {"id": line[3:].strip(), "text": [], "keys": []}
            docs.append(cur)
        elif line.startswith("keys:"):
            cur["keys"] = [k.strip() for k in line[5:].split(";") if k.strip()]
        else:
            cur["text"].append(line)
    return docs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--source", default=HERE / "keyword_corpus_source.txt")
    ap.add_argument("--lexicon", default=None)
    ap.add_argument("--out", default=HERE.parent / "tests" / "data" / "keywords")
    args = ap.parse_args()

    lex = load_lexicon(args.lexicon or default_lexicon())
    stem = PorterStemmer().stem
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for d in parse_source(args.source):
        toks = [stem(w) for w in words(" ".join(d["text"])) if lex.get(w, "NN") in KEEP and w not in ENGLISH_STOP_WORDS]
        gold = sorted({stem(w) for k in d["keys"] for w in words(k) if w not in ENGLISH_STOP_WORDS})
        (out / f"{d['id']}.tokens").write_text(" ".join(toks) + "\n", encoding="utf-8")
        (out / f"{d['id']}.gold").write_text(" ".join(gold) + "\n", encoding="utf-8")
        print(f"{d['id']}: {len(toks)} tokens, {len(set(toks))} types, {len(gold)} gold")


if __name__ == "__main__":
    main()
