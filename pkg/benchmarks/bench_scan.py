"""Compare the compiled scan kernels against the pure-Python fallback.

Builds one index from a realistic concept list, synthesizes a corpus
seeded with matching surfaces, and times scan_document under each
backend on identical inputs. The outputs are asserted equal first, so
the timings always describe the same work.

    python3 benchmarks/bench_scan.py --docs 2000 --doc-chars 600
"""

import argparse
import random
import time

from semlabel.corpus_matcher import Document, _scan_py, backend, build_index, scan_document
from semlabel.ontology_store import Concept, ConceptId
from semlabel.variant_generator import generate_variants

CONCEPTS = [
    ("ChEBI:CHEBI:17245", "carbon monoxide", ["CO"]),
    ("MeSH:D002248", "Carbon Monoxide", ["Monoxide, Carbon"]),
    ("Uniprot:P01375", "Tumor necrosis factor", ["TNF-alpha", "TNFA", "cachectin"]),
    ("Uniprot:IFNG_HUMAN", "Interferon gamma", ["IFN-gamma", "immune interferon"]),
    ("Uniprot:IL6_HUMAN", "Interleukin-6", ["IL-6", "B-cell stimulatory factor 2"]),
    ("MeSH:D012701", "Serotonin", ["5-Hydroxytryptamine", "5-HT"]),
    ("CheBI:CHEBI:16236", "ethanol", ["ethyl alcohol", "EtOH"]),
    ("Drugbank:DB00945", "Aspirin", ["acetylsalicylic acid"]),
    ("Drugbank:DB00316", "Acetaminophen", ["paracetamol", "APAP"]),
    ("MeSH:D009369", "Neoplasms", ["tumors", "cancer"]),
    ("MeSH:D000740", "Anemia", ["anaemia"]),
    ("ICD10:E11", "Type 2 diabetes mellitus", ["type II diabetes"]),
    ("CHEBI:CHEBI:27732", "caffeine", []),
    ("CHEBI:CHEBI:17234", "glucose", []),
    ("Uniprot:TGFB1_HUMAN", "Transforming growth factor beta-1", ["TGF-beta-1"]),
]

FILLER = (
    "patients study results analysis between groups observed significant "
    "treatment control baseline clinical measured levels serum plasma after "
    "before during increased decreased compared versus effects response the "
    "of in and with for was were to a an on by at"
).split()


def build_bench_index(budget: int):
    variants = []
    for curie, primary, synonyms in CONCEPTS:
        ontology, _, local = curie.partition(":")
        concept = Concept(ConceptId(ontology, local), primary, tuple(synonyms))
        variants.extend(generate_variants(concept, budget))
    return build_index(variants), [v.surface for v in variants]


def build_corpus(surfaces, n_docs: int, doc_chars: int, seed: int):
    rng = random.Random(seed)
    docs = []
    for i in range(n_docs):
        words = []
        length = 0
        while length < doc_chars:
            token = (
                rng.choice(surfaces) if rng.random() < 0.15 else rng.choice(FILLER)
            )
            words.append(token)
            length += len(token) + 1
        docs.append(Document(f"doc-{i}", " ".join(words)))
    return docs


def time_backend(index, docs, kernels, repeats: int):
    best = float("inf")
    hits = 0
    for _ in range(repeats):
        start = time.perf_counter()
        hits = sum(len(scan_document(index, doc, kernels=kernels)) for doc in docs)
        best = min(best, time.perf_counter() - start)
    return best, hits


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--docs", type=int, default=2000)
    parser.add_argument("--doc-chars", type=int, default=600)
    parser.add_argument("--budget", type=int, default=2000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    index, surfaces = build_bench_index(args.budget)
    docs = build_corpus(surfaces, args.docs, args.doc_chars, args.seed)
    total_chars = sum(len(d.text) for d in docs)
    print(
        f"index: {index.n_keys} keys / {len(index.patterns)} patterns; "
        f"corpus: {len(docs)} docs, {total_chars / 1e6:.2f} MB"
    )

    if backend.kernels is _scan_py:
        print("compiled kernel unavailable; timing the fallback only")
        contenders = [("python", _scan_py)]
    else:
        contenders = [(backend.SCAN_BACKEND, backend.kernels), ("python", _scan_py)]
        sample = docs[: min(200, len(docs))]
        for doc in sample:
            fast = scan_document(index, doc, kernels=backend.kernels)
            slow = scan_document(index, doc, kernels=_scan_py)
            assert fast == slow, f"backends disagree on {doc.doc_id}"
        print(f"outputs identical on {len(sample)} sampled docs")

    results = []
    for name, kernels in contenders:
        seconds, hits = time_backend(index, docs, kernels, args.repeats)
        results.append((name, seconds, hits))
        print(
            f"{name:>8}: {seconds:7.3f} s  "
            f"({total_chars / seconds / 1e6:6.1f} MB/s, {hits} occurrences)"
        )
    if len(results) == 2:
        print(f"speedup: {results[1][1] / results[0][1]:.1f}x")


if __name__ == "__main__":
    main()
