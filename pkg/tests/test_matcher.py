"""Dictionary scanning: windows, boundaries, case, stats, and files."""

import io

import pytest

from semlabel.corpus_matcher import (
    Document,
    FoundStats,
    Occurrence,
    TIER_GENERATED,
    TIER_ORIGINAL,
    TIER_PRIMARY,
    build_index,
    read_found_stats,
    read_occurrences,
    scan_corpus,
    scan_document,
    write_found_stats,
    write_occurrences,
)
from semlabel.errors import ConfigurationError, ConsistencyError
from semlabel.ontology_store import ConceptId
from tests.conftest import originals_index


def spans(index, text):
    return [
        (o.start, o.end, o.surface, o.normalized_key)
        for o in scan_document(index, Document("d", text))
    ]


class TestBasicMatching:
    def test_exact_surface(self):
        index = originals_index(("X:1", "carbon monoxide", []))
        assert spans(index, "acute carbon monoxide poisoning") == [
            (6, 21, "carbon monoxide", "carbon monoxide")
        ]

    def test_greek_letter_in_text(self):
        index = originals_index(("X:1", "TNF alpha", []))
        assert spans(index, "Effects of TNF α signaling") == [
            (11, 16, "TNF α", "tnf alpha")
        ]

    def test_hyphen_in_text_matches_space_in_key(self):
        index = originals_index(("X:1", "TNF alpha", []))
        assert spans(index, "serum TNF-alpha levels") == [
            (6, 15, "TNF-alpha", "tnf alpha")
        ]

    def test_line_break_and_carriage_return_collapse(self):
        index = originals_index(("X:1", "TNF alpha", []))
        assert spans(index, "before\r\nTNF\nalpha after") == [
            (8, 17, "TNF\nalpha", "tnf alpha")
        ]

    def test_ligature_expansion_keeps_offsets(self):
        index = originals_index(("X:1", "caffeine", []))
        text = "the eﬀects of caﬀeine intake"
        got = spans(index, text)
        assert got == [(14, 21, "caﬀeine", "caffeine")]
        start, end = got[0][0], got[0][1]
        assert text[start:end] == "caﬀeine"

    def test_no_match_in_plain_text(self):
        index = originals_index(("X:1", "carbon monoxide", []))
        assert spans(index, "regular prose about nothing in particular") == []

    def test_empty_text(self):
        index = originals_index(("X:1", "anything", []))
        assert spans(index, "") == []
        assert spans(index, "   \t  ") == []


class TestBoundaries:
    def test_substring_inside_word_is_not_a_match(self):
        index = originals_index(("X:1", "cat", []))
        assert spans(index, "concatenate scattered categories") == []

    def test_digits_block_the_boundary(self):
        index = originals_index(("X:1", "CO", []))
        assert spans(index, "CO2 levels rose") == []

    def test_hyphen_bridges_tokens(self):
        # a hyphen joins the match to the following token, so the span
        # sits inside a larger word and is rejected
        index = originals_index(("X:1", "CO", []))
        assert spans(index, "Co-administration of CO and fluids") == [
            (21, 23, "CO", "CO")
        ]

    def test_punctuation_is_a_boundary(self):
        index = originals_index(("X:1", "helium", []))
        assert spans(index, "helium, helium; (helium)") == [
            (0, 6, "helium", "helium"),
            (8, 14, "helium", "helium"),
            (17, 23, "helium", "helium"),
        ]

    def test_key_spanning_a_truncated_prefix_is_blocked(self):
        index = originals_index(("X:1", "utility ga", []))
        assert spans(index, "poisoning by utility gas") == []


class TestCaseRules:
    def test_short_acronym_requires_exact_case(self):
        index = originals_index(("X:1", "CAT", []))
        assert spans(index, "the CAT gene") == [(4, 7, "CAT", "CAT")]
        assert spans(index, "the cat gene") == []
        assert spans(index, "the Cat gene") == []

    def test_acronym_like_text_never_matches_a_word_key(self):
        # "Cat" and "CAT" look like acronyms, so they need an exact-case
        # key; the lowercase word key only covers lowercase text
        index = originals_index(("X:1", "cat", []))
        assert [s[:2] for s in spans(index, "cat Cat CAT")] == [(0, 3)]

    def test_long_words_fold_case_freely(self):
        index = originals_index(("X:1", "helium", []))
        assert [s[:2] for s in spans(index, "Helium HELIUM helium")] == [
            (0, 6),
            (7, 13),
            (14, 20),
        ]

    def test_acronym_and_word_keys_coexist(self):
        index = originals_index(("HGNC:1516", "CAT", []), ("Taxon:9685", "cat", []))
        got = scan_document(index, Document("d", "the CAT gene and the cat"))
        assert [(o.start, o.normalized_key, o.candidates) for o in got] == [
            (4, "CAT", (ConceptId("HGNC", "1516"),)),
            (21, "cat", (ConceptId("Taxon", "9685"),)),
        ]

    def test_mixed_case_acronym(self):
        index = originals_index(("X:1", "EtOH", []))
        assert spans(index, "EtOH intake") == [(0, 4, "EtOH", "EtOH")]
        assert spans(index, "etoh intake") == []
        assert spans(index, "ETOH intake") == []


class TestOverlaps:
    def test_leftmost_longest_wins(self):
        index = originals_index(
            ("X:1", "regular insulin", []), ("X:2", "insulin", [])
        )
        assert spans(index, "gave regular insulin today") == [
            (5, 20, "regular insulin", "regular insulin")
        ]

    def test_longer_match_preferred_at_same_start(self):
        index = originals_index(
            ("X:1", "carbon", []), ("X:2", "carbon monoxide", [])
        )
        assert spans(index, "carbon monoxide detector") == [
            (0, 15, "carbon monoxide", "carbon monoxide")
        ]

    def test_disjoint_matches_all_reported(self):
        index = originals_index(("X:1", "helium", []), ("X:2", "ethanol", []))
        assert [s[3] for s in spans(index, "helium then ethanol then helium")] == [
            "helium",
            "ethanol",
            "helium",
        ]

    def test_candidates_sorted_and_merged_per_key(self):
        index = originals_index(
            ("MeSH:D012701", "Serotonin", []), ("ChEBI:CHEBI:28790", "serotonin", [])
        )
        [occ] = scan_document(index, Document("d", "serotonin release"))
        assert occ.candidates == (
            ConceptId("ChEBI", "CHEBI:28790"),
            ConceptId("MeSH", "D012701"),
        )


class TestFoundStats:
    @pytest.fixture()
    def index(self):
        return originals_index(
            ("X:1", "helium", ["He gas"]),
            ("X:2", "ethanol", []),
        )

    def test_counts_docs_and_occurrences(self, index):
        stats = FoundStats.for_index(index)
        docs = [
            Document("d1", "helium and more helium"),
            Document("d2", "ethanol only"),
            Document("d3", "no terms here"),
        ]
        for doc in docs:
            stats.record_document(scan_document(index, doc))
        assert stats.docs_scanned == 3
        assert stats.key_docs["helium"] == 1
        assert stats.key_occurrences["helium"] == 2
        assert stats.key_docs["ethanol"] == 1
        assert stats.key_docs["he gas"] == 0
        assert stats.found("helium") is True
        assert stats.found("he gas") is False

    def test_variants_found_counts_distinct_keys(self, index):
        stats = FoundStats.for_index(index)
        stats.record_document(
            scan_document(index, Document("d1", "helium and He gas"))
        )
        assert stats.variants_found(ConceptId("X", "1")) == 2
        assert stats.variants_found(ConceptId("X", "2")) == 0
        assert stats.max_found_variants() == 2

    def test_doc_tiers_nest(self):
        index = originals_index(("X:1", "primary name", ["other name"]))
        stats = FoundStats.for_index(index)
        stats.record_document(
            scan_document(index, Document("d1", "the primary name here"))
        )
        stats.record_document(
            scan_document(index, Document("d2", "an other name here"))
        )
        primary, original, all_docs = stats.docs_with_concept(ConceptId("X", "1"))
        assert (primary, original, all_docs) == (1, 2, 2)

    def test_merge_accumulates(self, index):
        a = FoundStats.for_index(index)
        b = FoundStats.for_index(index)
        a.record_document(scan_document(index, Document("d1", "helium")))
        b.record_document(scan_document(index, Document("d2", "helium twice helium")))
        a.merge(b)
        assert a.docs_scanned == 2
        assert a.key_docs["helium"] == 2
        assert a.key_occurrences["helium"] == 3

    def test_merge_rejects_different_indexes(self, index):
        other = originals_index(("Y:1", "xenon", []))
        a = FoundStats.for_index(index)
        b = FoundStats.for_index(other)
        with pytest.raises(ConsistencyError):
            a.merge(b)


class TestScanCorpus:
    def test_duplicate_doc_ids_are_skipped(self):
        index = originals_index(("X:1", "helium", []))
        docs = [
            Document("d1", "helium here"),
            Document("d1", "different text, also helium"),
            Document("d2", "no match"),
        ]
        collected = []
        stats = scan_corpus(
            index, docs, on_result=lambda doc_id, occs: collected.extend(occs)
        )
        assert stats.docs_scanned == 2
        assert stats.duplicate_docs == 1
        assert [o.doc_id for o in collected] == ["d1"]

    def test_worker_pool_matches_serial_scan(self, mini_index, mini_corpus):
        serial_occ, pooled_occ = [], []
        serial_stats = scan_corpus(
            mini_index, mini_corpus, workers=1,
            on_result=lambda _id, occs: serial_occ.extend(occs),
        )
        pooled_stats = scan_corpus(
            mini_index, mini_corpus, workers=2,
            on_result=lambda _id, occs: pooled_occ.extend(occs),
        )
        assert pooled_occ == serial_occ
        assert pooled_stats.key_docs == serial_stats.key_docs
        assert pooled_stats.key_occurrences == serial_stats.key_occurrences
        assert pooled_stats.docs_scanned == serial_stats.docs_scanned
        assert pooled_stats.duplicate_docs == serial_stats.duplicate_docs

    def test_on_result_sees_docs_in_input_order(self):
        index = originals_index(("X:1", "helium", []))
        docs = [Document(f"d{i}", "helium") for i in range(20)]
        seen = []
        scan_corpus(index, docs, on_result=lambda doc_id, occs: seen.append(doc_id))
        assert seen == [f"d{i}" for i in range(20)]


class TestFiles:
    def test_occurrence_round_trip(self, tmp_path):
        index = originals_index(
            ("MeSH:D012701", "Serotonin", []), ("ChEBI:CHEBI:28790", "serotonin", [])
        )
        occurrences = scan_document(
            index, Document("doc 1", "serotonin\tand more serotonin")
        )
        # doc ids with spaces or tabs must survive framing
        occurrences = [
            Occurrence("doc\t1", o.start, o.end, o.surface, o.normalized_key, o.candidates)
            for o in occurrences
        ]
        path = tmp_path / "occ.tsv"
        with path.open("w", encoding="utf-8") as out:
            write_occurrences(out, occurrences)
        assert list(read_occurrences(path)) == occurrences

    def test_found_stats_round_trip(self, tmp_path):
        index = originals_index(("X:1", "helium", ["He gas"]), ("X:2", "ethanol", []))
        stats = FoundStats.for_index(index)
        stats.record_document(scan_document(index, Document("d1", "helium, ethanol")))
        stats.record_document(scan_document(index, Document("d2", "helium")))
        path = tmp_path / "found.tsv"
        with path.open("w", encoding="utf-8") as out:
            write_found_stats(out, stats)
        loaded = read_found_stats(path)
        assert loaded.docs_scanned == stats.docs_scanned
        assert loaded.key_docs == stats.key_docs
        assert loaded.key_occurrences == stats.key_occurrences
        assert loaded.docs_with_concept(ConceptId("X", "1")) == stats.docs_with_concept(
            ConceptId("X", "1")
        )

    def test_loaded_stats_refuse_index_dependent_queries(self, tmp_path):
        index = originals_index(("X:1", "helium", []))
        stats = FoundStats.for_index(index)
        stats.record_document(scan_document(index, Document("d1", "helium")))
        path = tmp_path / "found.tsv"
        with path.open("w", encoding="utf-8") as out:
            write_found_stats(out, stats)
        loaded = read_found_stats(path)
        with pytest.raises(ConsistencyError):
            loaded.variants_found(ConceptId("X", "1"))
        with pytest.raises(ConsistencyError):
            loaded.record_document([])
        # counter-only merging stays legal for stats without index context
        loaded.merge(stats)
        assert loaded.docs_scanned == 2


class TestIndex:
    def test_requires_at_least_one_variant(self):
        with pytest.raises(ConfigurationError):
            build_index([])

    def test_key_lookup(self, mini_index):
        assert "carbon monoxide" in mini_index
        assert mini_index.concepts_for("carbon monoxide") == (
            ConceptId("ChEBI", "CHEBI:17245"),
            ConceptId("Drugbank", "DB11588"),
            ConceptId("ICD10", "X47"),
            ConceptId("ICD10", "X67"),
            ConceptId("ICD10", "Y17"),
            ConceptId("MeSH", "D002248"),
        )

    def test_tier_assignment(self):
        index = originals_index(("X:1", "primary name", ["other name"]))
        assert dict(index.key_concept_tiers["primary name"]) == {
            ConceptId("X", "1"): TIER_PRIMARY
        }
        assert dict(index.key_concept_tiers["other name"]) == {
            ConceptId("X", "1"): TIER_ORIGINAL
        }

    def test_generated_tier(self, mini_index):
        tiers = dict(mini_index.key_concept_tiers["pgc 1alpha"])
        assert tiers[ConceptId("Uniprot", "PRGC1_HUMAN")] == TIER_GENERATED
