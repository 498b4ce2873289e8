"""URL/DOI/accession extraction and DOI canonicalization."""

import json

import pytest

from dastool.errors import NotADoi
from dastool.links import extract_links, normalize_doi

from conftest import CORPUS_DIR


class TestNormalizeDoi:
    def test_strips_doi_org_url(self):
        assert normalize_doi("https://doi.org/10.5281/Zenodo.100") == "10.5281/Zenodo.100"

    def test_strips_doi_prefix(self):
        assert normalize_doi("doi:10.1234/abc") == "10.1234/abc"

    def test_strips_dx_doi_org(self):
        assert normalize_doi("http://dx.doi.org/10.1234/AbC.def") == "10.1234/AbC.def"

    def test_suffix_case_preserved(self):
        assert normalize_doi("DOI: 10.5061/dryad.Q2BVQ83K1") == "10.5061/dryad.Q2BVQ83K1"

    def test_rejects_non_doi(self):
        with pytest.raises(NotADoi):
            normalize_doi("https://doi.org/not-a-doi")

    def test_idempotent_over_corpus_links(self):
        canonicals = []
        for gold in sorted(CORPUS_DIR.rglob("*.gold.json")):
            for span in json.loads(gold.read_text())["spans"]:
                canonicals.extend(l for l in span["links"] if l.startswith("10."))
        assert canonicals, "corpus should carry DOI links"
        for value in canonicals:
            assert normalize_doi(value) == value


class TestExtractLinks:
    def test_doi_org_url_is_doi_kind(self):
        links = extract_links("at https://doi.org/10.5281/zenodo.100.")
        assert len(links) == 1
        link = links[0]
        assert link.kind == "doi"
        assert link.raw == "https://doi.org/10.5281/zenodo.100"
        assert link.canonical == "10.5281/zenodo.100"

    def test_trailing_punctuation_trimmed(self):
        links = extract_links('(see https://osf.io/q4vxe).')
        assert links[0].raw == "https://osf.io/q4vxe"
        assert links[0].kind == "url"

    def test_bare_doi(self):
        links = extract_links("Deposited under 10.5061/dryad.q2bvq83k1 last year.")
        assert [l.canonical for l in links] == ["10.5061/dryad.q2bvq83k1"]

    def test_doi_prefix_form(self):
        links = extract_links("Record doi: 10.1093/nar/gkaa1100; see above.")
        assert links[0].kind == "doi"
        assert links[0].canonical == "10.1093/nar/gkaa1100"
        assert links[0].raw == "doi: 10.1093/nar/gkaa1100"

    def test_accession_requires_context_word(self):
        assert extract_links("Series GSE12345 was reanalysed.") == []
        links = extract_links("Deposited under accession number GSE12345.")
        assert [(l.kind, l.canonical) for l in links] == [("accession", "GSE12345")]

    def test_accession_varieties(self):
        text = "Runs SRR1234567 and PRJNA731589 and GenBank KX969442, accession numbers above."
        kinds = {l.canonical: l.kind for l in extract_links(text)}
        assert kinds == {
            "SRR1234567": "accession",
            "PRJNA731589": "accession",
            "KX969442": "accession",
        }

    def test_duplicate_canonicals_keep_first_span(self):
        text = "See https://doi.org/10.1/x and later https://doi.org/10.1/x again."
        links = extract_links(text)
        assert len(links) == 1
        assert links[0].span.start == text.index("https://")

    def test_base_offset_applied(self):
        text = "xxxx https://osf.io/q4vxe"
        links = extract_links(text[5:], base_offset=5)
        assert links[0].span == (5, len(text))

    def test_raw_is_verbatim_substring(self):
        text = 'Data: "https://github.com/lab/tool", doi:10.1234/p.q, accession SRR999999.'
        for link in extract_links(text):
            assert text[link.span.start:link.span.end] == link.raw

    def test_url_embedded_doi_not_double_counted(self):
        text = "Mirror at https://archive.example.org/10.5281/zenodo.100/copy has it."
        links = extract_links(text)
        assert len(links) == 1
        assert links[0].kind == "url"
