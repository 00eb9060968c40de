import pytest

from pathlib import Path


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(n, name): release acceptance gate identity"
    )
    config._acceptance_lines = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        n, name = mark.args
        status = "PASS" if report.passed else "FAIL"
        item.config._acceptance_lines.append((float(n), f"ACCEPTANCE {n} {name}: {status}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)

from semlabel.corpus_matcher import Document, TermIndex, build_index
from semlabel.ontology_store import Concept, ConceptId, OntologySnapshot, ingest_ontology
from semlabel.variant_generator import (
    Provenance,
    TermVariant,
    generate_variants,
)
from semlabel.formats import read_corpus
from semlabel.text import normalize_term

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def snapshot() -> OntologySnapshot:
    return ingest_ontology(
        [FIXTURES / "homographs.tsv", FIXTURES / "extra_concepts.tsv"]
    )


@pytest.fixture(scope="session")
def mini_variants(snapshot) -> dict[ConceptId, tuple[TermVariant, ...]]:
    return {
        concept.id: generate_variants(concept, budget=2000)
        for concept in snapshot
    }


@pytest.fixture(scope="session")
def mini_index(mini_variants) -> TermIndex:
    def stream():
        for variants in mini_variants.values():
            yield from variants

    return build_index(stream())


@pytest.fixture(scope="session")
def mini_corpus() -> list[Document]:
    return [
        Document(rec.doc_id, rec.text, rec.source)
        for rec in read_corpus(FIXTURES / "mini_corpus.tsv")
    ]


def originals_index(*entries: tuple[str, str, list[str]]) -> TermIndex:
    """Index over literal names only, no generated variants.

    Each entry is ``(curie, primary, synonyms)``; most matcher tests want
    exact control over which keys exist.
    """
    variants = []
    for curie, primary, synonyms in entries:
        concept_id = ConceptId.parse(curie)
        for name in [primary, *synonyms]:
            variants.append(
                TermVariant(name, normalize_term(name), concept_id, Provenance.ORIGINAL)
            )
    return build_index(variants)


def make_concept(curie: str, primary: str, synonyms: list[str] | None = None) -> Concept:
    return Concept(ConceptId.parse(curie), primary, tuple(synonyms or ()))
