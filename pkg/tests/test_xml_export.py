"""Inline-XML serialization: exact strings, escaping, and round trips."""

import pytest

from semlabel.annotation_service.store import (
    AnnotationRecord,
    CandidateState,
    DocumentRecord,
    SpanState,
)
from semlabel.annotation_service.xml_io import (
    export_document,
    parse_export,
    reserialize,
    strip_terms,
)
from semlabel.corpus_matcher import Occurrence
from semlabel.errors import ValidationError
from semlabel.ontology_store import ConceptId

CHEBI = ConceptId("ChEBI", "CHEBI:17245")
DRUGBANK = ConceptId("Drugbank", "DB11588")
MESH = ConceptId("MeSH", "D002248")


def doc(text, doc_id="d1", created_at="2026-01-01T00:00:00+00:00"):
    return DocumentRecord(doc_id=doc_id, source="", created_at=created_at, text=text)


def record(
    start,
    end,
    text,
    states,
    span_state=SpanState.ACTIVE,
    aid="a1",
    updated_at="2026-01-01T00:00:00+00:00",
):
    surface = text[start:end]
    occ = Occurrence("d1", start, end, surface, surface.lower(), tuple(states))
    return AnnotationRecord(aid, occ, dict(states), span_state, updated_at)


class TestSerialization:
    def test_auto_span(self):
        d = doc("CO in blood.")
        r = record(0, 2, d.text, {CHEBI: CandidateState.AUTO, DRUGBANK: CandidateState.AUTO})
        assert export_document(d, [r]) == (
            '<document id="d1" exported_at="2026-01-01T00:00:00+00:00">'
            '<text><term id="a1" refs="ChEBI:CHEBI:17245 Drugbank:DB11588" status="auto">CO</term>'
            " in blood.</text></document>"
        )

    def test_confirmed_span_lists_only_confirmations(self):
        d = doc("CO in blood.")
        r = record(
            0,
            2,
            d.text,
            {CHEBI: CandidateState.CONFIRMED, DRUGBANK: CandidateState.REJECTED},
            updated_at="2026-01-01T00:00:05+00:00",
        )
        assert export_document(d, [r]) == (
            '<document id="d1" exported_at="2026-01-01T00:00:05+00:00">'
            '<text><term id="a1" refs="ChEBI:CHEBI:17245" rejected="Drugbank:DB11588"'
            ' status="confirmed">CO</term> in blood.</text></document>'
        )

    def test_partial_span_lists_survivors(self):
        d = doc("CO here")
        r = record(
            0,
            2,
            d.text,
            {
                CHEBI: CandidateState.AUTO,
                DRUGBANK: CandidateState.REJECTED,
                MESH: CandidateState.AUTO,
            },
        )
        parsed = parse_export(export_document(d, [r]))
        span = parsed.spans[0]
        assert span.status == "partial"
        assert span.refs == (CHEBI, MESH)
        assert span.rejected == (DRUGBANK,)

    def test_all_rejected_span_has_empty_refs(self):
        d = doc("CO here")
        r = record(
            0, 2, d.text,
            {CHEBI: CandidateState.REJECTED, DRUGBANK: CandidateState.REJECTED},
        )
        xml = export_document(d, [r])
        assert 'refs=""' in xml
        assert 'status="partial"' in xml

    def test_not_bio_spans_are_plain_text(self):
        d = doc("CO in blood.")
        r = record(0, 2, d.text, {CHEBI: CandidateState.REJECTED}, SpanState.NOT_BIO)
        assert export_document(d, [r]) == (
            '<document id="d1" exported_at="2026-01-01T00:00:00+00:00">'
            "<text>CO in blood.</text></document>"
        )

    def test_local_ids_are_renumbered_over_active_spans(self):
        d = doc("CO and CO and CO")
        rs = [
            record(0, 2, d.text, {CHEBI: CandidateState.AUTO}, aid="a7"),
            record(
                7, 9, d.text,
                {CHEBI: CandidateState.REJECTED}, SpanState.NOT_BIO, aid="a8",
            ),
            record(14, 16, d.text, {CHEBI: CandidateState.AUTO}, aid="a9"),
        ]
        parsed = parse_export(export_document(d, rs))
        assert [s.local_id for s in parsed.spans] == ["a1", "a2"]
        assert [s.start for s in parsed.spans] == [0, 14]

    def test_exported_at_is_the_latest_touch(self):
        d = doc("CO", created_at="2026-01-01T00:00:00+00:00")
        rs = [
            record(0, 2, d.text, {CHEBI: CandidateState.AUTO},
                   updated_at="2026-01-01T00:00:09+00:00"),
        ]
        parsed = parse_export(export_document(d, rs))
        assert parsed.exported_at == "2026-01-01T00:00:09+00:00"

    def test_empty_document_serializes(self):
        d = doc("   ")
        assert export_document(d, []) == (
            '<document id="d1" exported_at="2026-01-01T00:00:00+00:00">'
            "<text>   </text></document>"
        )


class TestEscaping:
    def test_markup_characters_in_text(self):
        d = doc("a < b & c > d, CO!")
        r = record(15, 17, d.text, {CHEBI: CandidateState.AUTO})
        xml = export_document(d, [r])
        assert "a &lt; b &amp; c &gt; d" in xml
        assert strip_terms(xml) == d.text

    def test_carriage_returns_survive(self):
        # a raw \r would be normalized to \n by any XML parser
        d = doc("before\r\nCO after")
        r = record(8, 10, d.text, {CHEBI: CandidateState.AUTO})
        xml = export_document(d, [r])
        assert "&#13;" in xml
        assert strip_terms(xml) == d.text

    def test_attribute_escaping(self):
        d = doc("plain", doc_id='we"ird\tid')
        xml = export_document(d, [])
        assert 'id="we&quot;ird&#9;id"' in xml
        assert parse_export(xml).doc_id == 'we"ird\tid'


class TestRoundTrips:
    def test_parse_recovers_offsets_and_text(self):
        d = doc("Carbon monoxide, again carbon monoxide, and CO.")
        rs = [
            record(0, 15, d.text, {CHEBI: CandidateState.CONFIRMED}, aid="a1"),
            record(23, 38, d.text, {CHEBI: CandidateState.AUTO}, aid="a2"),
            record(44, 46, d.text, {DRUGBANK: CandidateState.AUTO}, aid="a3"),
        ]
        parsed = parse_export(export_document(d, rs))
        assert parsed.text == d.text
        assert [(s.start, s.end, s.surface) for s in parsed.spans] == [
            (0, 15, "Carbon monoxide"),
            (23, 38, "carbon monoxide"),
            (44, 46, "CO"),
        ]

    def test_reserialize_is_a_fixed_point(self):
        d = doc("a < b & CO\r\n> tail")
        r = record(8, 10, d.text, {CHEBI: CandidateState.CONFIRMED,
                                   DRUGBANK: CandidateState.REJECTED})
        xml = export_document(d, [r])
        assert reserialize(parse_export(xml)) == xml

    def test_golden_exports_are_fixed_points(self, tmp_path):
        from tests.conftest import GOLDEN

        for name in ("export_pmid-777019.xml", "export_note-1.xml", "export_note-2.xml"):
            xml = (GOLDEN / name).read_text(encoding="utf-8")
            assert reserialize(parse_export(xml)) == xml


class TestParseErrors:
    @pytest.mark.parametrize(
        "bad",
        [
            "not xml at all <",
            "<wrong><text>t</text></wrong>",
            '<document id="d"></document>',
            '<document id="d"><text><b>t</b></text></document>',
            '<document id="d"><text><term id="a1" refs="" status="weird">t</term></text></document>',
        ],
    )
    def test_malformed_exports_are_rejected(self, bad):
        with pytest.raises(ValidationError):
            parse_export(bad)
