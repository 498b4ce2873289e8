#!/usr/bin/env python3
"""Regenerate the labeled seed corpus under corpus/.

Each positive document carries exactly one hand-written data access statement;
the gold span is located by searching for that authored sentence in the
normalized text, so labels stay independent of the extraction pipeline. The
script then runs the pipeline over every file and refuses to write a corpus
that the builtin config cannot score cleanly (positives: one statement with
the right category; negatives: none).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dastool.config import load_config
from dastool.extraction import extract
from dastool.ingest import InputDescriptor, load_document, normalize_text

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def doc(name, category, text, statement=None, links=(), n_statements=1):
    return {
        "name": name,
        "category": category,
        "text": text.strip("\n") + "\n",
        "statement": statement,
        "links": list(links),
        "n_statements": n_statements,
    }


POSITIVES = [
    doc(
        "01_repo_zenodo",
        "repository_deposited",
        """
Effects of Mulching on Soil Moisture Retention

Methods
Field plots were sampled weekly over two growing seasons and soil cores were processed following standard protocols. Statistical analyses were carried out in R version 4.2.

Data Availability Statement
The data are openly available in Zenodo at https://doi.org/10.5281/zenodo.100.
""",
        statement="The data are openly available in Zenodo at https://doi.org/10.5281/zenodo.100.",
        links=["10.5281/zenodo.100"],
    ),
    doc(
        "02_repo_geo",
        "repository_deposited",
        """
Transcriptomic Responses to Cold Stress in Maize Seedlings

Methods
Seedlings were exposed to 4 degrees Celsius for 48 hours before RNA extraction. Libraries were sequenced on a NovaSeq 6000 instrument.

Data Availability
All sequencing data have been deposited in the Gene Expression Omnibus under accession number GSE45678.
""",
        statement="All sequencing data have been deposited in the Gene Expression Omnibus under accession number GSE45678.",
        links=["GSE45678"],
    ),
    doc(
        "03_repo_dryad_noheading",
        "repository_deposited",
        """
Grassland Recovery After Prescribed Burning

Methods
Vegetation surveys followed the point-intercept method at 56 permanent quadrats. Soil chemistry was profiled each spring.

The datasets generated during the current study are available in the Dryad repository at https://doi.org/10.5061/dryad.q2bvq83k1.
""",
        statement="The datasets generated during the current study are available in the Dryad repository at https://doi.org/10.5061/dryad.q2bvq83k1.",
        links=["10.5061/dryad.q2bvq83k1"],
    ),
    doc(
        "04_repo_github",
        "repository_deposited",
        """
A Streamflow Partitioning Model for Karst Catchments

Model Description
The solver couples a reservoir cascade with an explicit conduit network. Calibration used the shuffled complex evolution scheme.

Availability of data and materials
The analysis code is openly available on GitHub at https://github.com/labdata/stream-chem.
""",
        statement="The analysis code is openly available on GitHub at https://github.com/labdata/stream-chem.",
        links=["https://github.com/labdata/stream-chem"],
    ),
    doc(
        "05_repo_osf_numbered",
        "repository_deposited",
        """
Acoustic Monitoring of Bat Activity Along Urban Gradients

6. Acknowledgements
We thank the volunteer recording network for site access.

7. Data and Code Availability
All raw data were archived in the OSF repository at https://osf.io/q4vxe together with the processing scripts.
""",
        statement="All raw data were archived in the OSF repository at https://osf.io/q4vxe together with the processing scripts.",
        links=["https://osf.io/q4vxe"],
    ),
    doc(
        "06_req_corresponding",
        "on_request",
        """
Dietary Patterns and Sleep Quality in Shift Workers

Methods
Participants completed a seven-day food diary and wore wrist actigraphy devices. Mixed models adjusted for rotation schedule.

Data Availability Statement
Data are available from the corresponding author upon reasonable request.
""",
        statement="Data are available from the corresponding author upon reasonable request.",
    ),
    doc(
        "07_req_datasets",
        "on_request",
        """
Household Energy Use Before and After Retrofitting

Methods
Smart-meter readings were aggregated to daily totals. Household characteristics were collected by interview.

Data availability
The datasets analysed during the current study are available from the corresponding author on reasonable request.
""",
        statement="The datasets analysed during the current study are available from the corresponding author on reasonable request.",
    ),
    doc(
        "08_req_noheading",
        "on_request",
        """
Teacher Wellbeing During Curriculum Reform

Methods
A stratified sample of 412 teachers completed the survey across three waves. Attrition was balanced across strata.

Summary tables are provided as supplementary material. The survey data are available from the authors upon request.
""",
        statement="The survey data are available from the authors upon request.",
    ),
    doc(
        "09_req_anonymised",
        "on_request",
        """
Gait Stability in Older Adults Using Dual-Task Paradigms

Methods
Participants walked on an instrumented treadmill while performing serial subtraction. Marker trajectories were low-pass filtered.

Availability of data
Anonymised data will be made available upon reasonable request to the corresponding author.
""",
        statement="Anonymised data will be made available upon reasonable request to the corresponding author.",
    ),
    doc(
        "10_req_contact",
        "on_request",
        """
Outcomes of Early Mobilisation in Intensive Care

Methods
A pragmatic stepped-wedge design enrolled twelve units. Outcomes were assessed at ninety days.

Data sharing
Individual participant data can be obtained on request from the study coordination office. A data dictionary is available in the supplementary material; requests are reviewed by the corresponding author within four weeks.
""",
        statement="Individual participant data can be obtained on request from the study coordination office.",
    ),
    doc(
        "11_paper_included",
        "in_paper_or_supplement",
        """
Thermal Tolerance Limits of Intertidal Gastropods

Methods
Critical thermal maxima were measured with a ramping assay at 0.3 degrees Celsius per minute.

Data Availability Statement
All data generated or analysed during this study are included in this published article and its supplementary information files.
""",
        statement="All data generated or analysed during this study are included in this published article and its supplementary information files.",
    ),
    doc(
        "12_paper_within",
        "in_paper_or_supplement",
        """
Bias Audits of Automated Resume Screening

Methods
Counterfactual resume pairs were generated by swapping demographic signals while holding qualifications fixed.

Data availability
The data that support the findings of this study are available within the article and its supplementary material.
""",
        statement="The data that support the findings of this study are available within the article and its supplementary material.",
    ),
    doc(
        "13_paper_noheading",
        "in_paper_or_supplement",
        """
Mapping Root Architecture with Low-Cost Rhizotrons

Methods
Weekly images were segmented with a watershed routine and manually corrected.

All relevant data are available in the paper and its supplementary tables. Additional imaging parameters are described in the supplementary material.
""",
        statement="All relevant data are available in the paper and its supplementary tables.",
    ),
    doc(
        "14_paper_conclusions",
        "in_paper_or_supplement",
        """
Antibiotic Residues in Peri-Urban Irrigation Water

Methods
Grab samples were collected monthly at nine channels and quantified by LC-MS/MS.

Availability of data and materials
The datasets supporting the conclusions of this article are included within the article and its additional files.
""",
        statement="The datasets supporting the conclusions of this article are included within the article and its additional files.",
    ),
    doc(
        "15_paper_source",
        "in_paper_or_supplement",
        """
Single-Cell Dynamics of Biofilm Dispersal

Methods
Time-lapse microscopy tracked labelled cells in flow chambers over 18 hours.

Data Availability
Source data for all figures are provided with this paper as supplementary data files.
""",
        statement="Source data for all figures are provided with this paper as supplementary data files.",
    ),
    doc(
        "16_restr_privacy",
        "restricted_conditional",
        """
Linking Registry Records to Evaluate Vaccination Outreach

Methods
Records were linked deterministically on national identifiers within a secure enclave.

Data Availability Statement
The data are not publicly available due to privacy restrictions protecting participant confidentiality.
""",
        statement="The data are not publicly available due to privacy restrictions protecting participant confidentiality.",
    ),
    doc(
        "17_restr_ethics",
        "restricted_conditional",
        """
Whole-Genome Sequencing in a Founder Population

Methods
Variant calling followed the consortium pipeline with joint genotyping.

Data availability
Individual-level genomic data cannot be shared openly because of ethical and legal constraints, and access requires a signed data use agreement.
""",
        statement="Individual-level genomic data cannot be shared openly because of ethical and legal constraints, and access requires a signed data use agreement.",
    ),
    doc(
        "18_restr_onrequest",
        "restricted_conditional",
        """
Readmission Risk After Elective Cardiac Surgery

Methods
Electronic health records from three hospitals were harmonised to a common data model.

Availability of data and materials
The clinical dataset is not publicly available owing to patient privacy regulations, but de-identified extracts are available from the corresponding author upon reasonable request after ethics approval.
""",
        statement="The clinical dataset is not publicly available owing to patient privacy regulations, but de-identified extracts are available from the corresponding author upon reasonable request after ethics approval.",
    ),
    doc(
        "19_restr_noheading",
        "restricted_conditional",
        """
Narratives of Recovery After Workplace Injury

Methods
Semi-structured interviews were conducted with 31 claimants over two years.

The underlying data are not publicly available because participant consent does not cover open sharing; de-identified transcripts are available to approved researchers upon reasonable request.
""",
        statement="The underlying data are not publicly available because participant consent does not cover open sharing; de-identified transcripts are available to approved researchers upon reasonable request.",
    ),
    doc(
        "20_restr_license",
        "restricted_conditional",
        """
Retail Mobility Patterns from Commercial Footfall Panels

Methods
Footfall counts were modelled with hierarchical seasonal terms.

Data Access Statement
Due to the proprietary nature of the licensing agreement with the data provider, the underlying data are not publicly available.
""",
        statement="Due to the proprietary nature of the licensing agreement with the data provider, the underlying data are not publicly available.",
    ),
    doc(
        "21_noda_created",
        "not_available",
        """
A Critical Review of Soil Carbon Accounting Standards

Scope
The review covers voluntary and compliance markets from 2010 onwards.

Data Availability Statement
No new data were created or analysed in this study; data sharing is not applicable to this article.
""",
        statement="No new data were created or analysed in this study; data sharing is not applicable to this article.",
    ),
    doc(
        "22_noda_generated",
        "not_available",
        """
Rethinking Consent Interfaces in Mobile Health

Commentary
We argue that consent flows should be evaluated as instruments.

Data availability
No datasets were generated or analysed during the current study.
""",
        statement="No datasets were generated or analysed during the current study.",
    ),
    doc(
        "23_noda_review",
        "not_available",
        """
Fifty Years of Predator-Prey Theory: A Synthesis

Approach
We trace the lineage of functional response models across 214 publications.

Data and Code Availability
No new data were generated for this review, and no custom code was written; all figures reuse previously published values.
""",
        statement="No new data were generated for this review, and no custom code was written; all figures reuse previously published values.",
    ),
    doc(
        "24_noda_boilerplate",
        "not_available",
        """
Perspectives on Open Peer Review Adoption

Discussion
Editorial workflows differ widely across disciplines and publisher sizes.

Availability of data and materials
Data sharing is not applicable to this article as no datasets were generated or analysed during the current study.
""",
        statement="Data sharing is not applicable to this article as no datasets were generated or analysed during the current study.",
    ),
    doc(
        "25_noda_theory",
        "not_available",
        """
An Exact Solution for Queueing Networks with Batch Arrivals

Results
Closed-form expressions are derived for the stationary distribution.

Data sharing
No primary data were collected for this theoretical study; the manuscript relies on the corresponding author's previously published derivations and their supplementary material.
""",
        statement="No primary data were collected for this theoretical study; the manuscript relies on the corresponding author's previously published derivations and their supplementary material.",
    ),
    doc(
        "26_unsp_documented",
        "unspecified_present",
        """
Benchmarking Heat Pump Performance in Cold Climates

Methods
Coefficient of performance was logged at one-minute resolution across 44 homes.

Data Availability Statement
Data are available; access procedures are described in the project handbook.
""",
        statement="Data are available; access procedures are described in the project handbook.",
    ),
    doc(
        "27_unsp_community",
        "unspecified_present",
        """
Longitudinal Trends in Adolescent Screen Time

Methods
Cohort members reported device use annually between 2015 and 2023.

Data Availability
The data are available to members of the research community.
""",
        statement="The data are available to members of the research community.",
    ),
    doc(
        "28_unsp_consortium",
        "unspecified_present",
        """
Harmonised Soil Spectral Libraries Across Three Continents

Methods
Spectra were resampled to a common wavelength grid before modelling.

Data Availability
Data are available as set out in the consortium access policy.
""",
        statement="Data are available as set out in the consortium access policy.",
    ),
    doc(
        "29_unsp_code",
        "unspecified_present",
        """
Probabilistic Forecasts of River Ice Breakup

Methods
An ensemble of gradient-boosted models was trained on 60 years of records.

Data and code availability
The data and analysis code are available; see the project website for details.
""",
        statement="The data and analysis code are available; see the project website for details.",
    ),
    doc(
        "30_unsp_numbered",
        "unspecified_present",
        """
Crowdsourced Noise Mapping with Calibrated Smartphones

5. Limitations
Device microphones drift with age, which widens calibration intervals.

6. Data Availability
The data are available; access instructions are maintained on the laboratory information page.
""",
        statement="The data are available; access instructions are maintained on the laboratory information page.",
    ),
]

NEGATIVES = [
    doc("n01_field_stats", None, """
Nitrogen Cycling in Restored Wetlands

Methods
Data were collected from 42 field sites and analysed using mixed-effects models. Model residuals were inspected for spatial autocorrelation before inference.
"""),
    doc("n02_survey_design", None, """
Civic Participation After Local Newspaper Closures

Methods
The survey instrument was piloted twice and translated into four languages. Weighting followed the census margins for age and district.
"""),
    doc("n03_imaging_pipeline", None, """
Cortical Thickness Changes in Early Psychosis

Methods
Imaging data were preprocessed with standard surface-based pipelines before statistical analysis. Scanner drift was monitored with weekly phantom scans.
"""),
    doc("n04_references_dryad", None, """
Pollinator Network Stability Under Drought

Conclusions
Network rewiring buffered visitation rates in dry years.

References
[14] Alvarez R. Data from: Grassland biodiversity survey. Dryad Digital Repository; 2019. https://doi.org/10.5061/dryad.zz99x.
[15] Chen L. Drought indices for temperate meadows. Journal of Ecology; 2021.
"""),
    doc("n05_references_zenodo", None, """
Bayesian Calibration of Snowmelt Models

Discussion
Posterior predictive checks favoured the two-layer energy balance variant.

References
[3] Moreau P. Alpine snow course measurements. Zenodo; 2020. https://doi.org/10.5281/zenodo.7777.
[4] Silva T. On the identifiability of degree-day factors. Hydrology Letters; 2018.
"""),
    doc("n06_genbank_methods", None, """
Phylogeography of an Invasive Mussel

Methods
Sequences were compared against GenBank entries using BLAST with default parameters. Haplotype networks were drawn with median joining.
"""),
    doc("n07_github_mention", None, """
An Event-Driven Simulator for Pedestrian Flows

Implementation
The simulation framework is maintained on GitHub and documented in the online manual. Releases follow semantic versioning.
"""),
    doc("n08_weather_station", None, """
Microclimate Variation in Green Roofs

Methods
Temperature and humidity were logged every ten minutes at twelve roof plots. Sensor housings were shielded from direct radiation.
"""),
    doc("n09_clinical_consent", None, """
Adverse Events in Outpatient Anticoagulation

Methods
Patients provided written informed consent before enrolment. Events were adjudicated by a blinded committee.
"""),
    doc("n10_software_versions", None, """
Detecting Selection Sweeps with Composite Statistics

Methods
All analyses used open-source software; versions are listed in Table 2. Random seeds were fixed for reproducibility.
"""),
    doc("n11_funding_ack", None, """
Coastal Erosion Forecasts for Managed Retreat Planning

Acknowledgements
This work was funded by the regional resilience programme. We thank two anonymous reviewers for constructive comments.
"""),
    doc("n12_interviews", None, """
Care Coordination in Rural Oncology

Methods
Interviews were transcribed verbatim and coded thematically by two researchers. Disagreements were resolved by consensus.
"""),
    doc("n13_archaeology", None, """
Trade Routes Inferred from Ceramic Assemblages

Methods
Sherds were classified by fabric group under low magnification. Counts were normalised by excavated volume.
"""),
    doc("n14_chemistry", None, """
Selective Hydrogenation over Bimetallic Catalysts

Methods
Conversion was measured by gas chromatography with an internal standard. Catalysts were reduced in situ before each run.
"""),
    doc("n15_geo_reuse", None, """
Meta-Analysis of Hypoxia Signatures in Solid Tumours

Methods
Gene expression profiles from the publicly available GEO series were reanalysed under the original licence terms, using the accession number GSE99999 as the discovery cohort. Batch effects were corrected with an empirical Bayes approach.
"""),
    doc("n16_supp_methods", None, """
Optimising Fermentation Media for Bacteriocin Yield

Methods
Extended methodological details are given in the supplementary material, and reagent lists appear in the supplementary information. Response surfaces were fitted with second-order polynomials.
"""),
    doc("n17_author_contrib", None, """
Seasonal Movements of Juvenile Sea Turtles

Author Contributions
The corresponding author designed the study; all authors approved the final manuscript. Conflicts of interest are declared in the supplementary information.
"""),
    doc("n18_protocol_registry", None, """
A Cluster Trial of Community Handwashing Promotion

Methods
The trial protocol was deposited in the institutional registry before recruitment began, and amendments were approved by the ethics board. The full protocol is also summarised in the supplementary material.
"""),
    doc("n19_imagenet", None, """
Compressing Vision Transformers for Edge Devices

Experimental Setup
Models were trained on the publicly available ImageNet corpus as distributed by the original maintainers. The preprocessing configuration is listed in the supplementary information.
"""),
    doc("n20_preregistered", None, """
Does Feedback Timing Shape Motor Learning?

Methods
The analysis plan was preregistered; deviations are documented in the supplementary material together with the code review checklist signed by the corresponding author.
"""),
    doc("n21_consent_forms", None, """
Caregiver Burden in Progressive Neurological Disease

Ethics
Ethics approval numbers are listed per cohort in the supplementary information, and copies of the consent forms can be requested from the corresponding author.
"""),
    doc("n22_das_guidance", None, """
Reporting Quality in Preclinical Stroke Research

Discussion
We followed the journal's data availability guidance when preparing the submission checklist. Screening decisions were logged in duplicate.
"""),
    doc("n23_das_policy", None, """
Funder Mandates and Publication Workflows

Policy Context
The data availability statement requirements of the funder are summarised in Box 1. Compliance was assessed at submission and acceptance.
"""),
    doc("n24_reviewer_only", None, """
Priming Effects in Rapid Scene Categorisation

Methods
Raw data are available to the reviewers during peer review only, as required by the submission system. Analysis scripts will be versioned on GitHub after acceptance.
"""),
    doc("n25_embargoed", None, """
Labour Market Returns to Micro-Credentials

Methods
Aggregated survey indicators are available upon reasonable request according to the data service's embargo schedule. Variable definitions follow the harmonisation handbook summarised in the supplementary information.
"""),
    doc("n26_open_software", None, """
A Spectral Element Solver for Shallow Water Equations

Software
The solver is openly available on the group's website, and tutorial notebooks accompany the documentation. Releases are mirrored on GitHub.
"""),
    doc("n27_cited_yearbooks", None, """
Convergence of Regional Productivity in Manufacturing

Data Sources
The underlying data for Figure 3 come from the cited national statistics yearbooks [22]. Country codes follow the published ISO tables in the supplementary information.
"""),
    doc("n28_embargo_plan", None, """
Trait Plasticity in Alpine Cushion Plants

Methods
The data will be made available once the consortium embargo ends. Release timing is specified in our data availability plan.
"""),
    doc("n29_materials_methods", None, """
Wear Resistance of Laser-Clad Coatings

Materials and Methods
Standard reagents were used throughout. Data processing followed the pipeline of ref. [8] with minor adjustments.
"""),
    doc("n30_worldclim", None, """
Climate Envelopes of Range-Expanding Dragonflies

Data Sources
Input rasters were obtained from the publicly available WorldClim portal (version 2.1), which should be cited directly. Derived layers are listed in the supplementary material.
"""),
]


def build() -> int:
    cfg = load_config("builtin")
    failures = []
    for subdir, docs in (("positives", POSITIVES), ("negatives", NEGATIVES)):
        out = CORPUS / subdir
        out.mkdir(parents=True, exist_ok=True)
        for entry in docs:
            text = entry["text"]
            if normalize_text(text) != text:
                failures.append(f"{entry['name']}: text is not a normalization fixed point")
                continue
            spans = []
            if entry["statement"]:
                start = text.find(entry["statement"])
                if start < 0:
                    failures.append(f"{entry['name']}: statement not found in text")
                    continue
                spans.append({
                    "start": start,
                    "end": start + len(entry["statement"]),
                    "category": entry["category"],
                    "links": entry["links"],
                })
            (out / f"{entry['name']}.txt").write_text(text, encoding="utf-8")
            (out / f"{entry['name']}.gold.json").write_text(
                json.dumps({"spans": spans}, indent=2) + "\n", encoding="utf-8"
            )

            document = load_document(
                InputDescriptor(format="plain_text", data=text),
                heading_lexicon=cfg.heading_lexicon,
            )
            result = extract(document, cfg)
            got = result.statements
            if entry["category"] is None:
                if got:
                    failures.append(
                        f"{entry['name']}: expected 0 statements, got "
                        f"{[(s.category, s.score, s.text[:60]) for s in got]}"
                    )
                continue
            if len(got) != entry["n_statements"]:
                failures.append(
                    f"{entry['name']}: expected {entry['n_statements']} statement(s), got "
                    f"{[(s.category, s.score, s.text[:60]) for s in got]} "
                    f"(prefilter={result.prefilter.score})"
                )
                continue
            stmt = got[0]
            gold = spans[0]
            if not (stmt.span.start < gold["end"] and gold["start"] < stmt.span.end):
                failures.append(f"{entry['name']}: extracted span {stmt.span} misses gold")
            if stmt.category != entry["category"]:
                failures.append(
                    f"{entry['name']}: category {stmt.category} != gold {entry['category']}"
                )
            extracted_canonicals = {link.canonical for link in stmt.links}
            missing = [l for l in entry["links"] if l not in extracted_canonicals]
            if missing:
                failures.append(f"{entry['name']}: links not recovered: {missing}")

    if failures:
        print("CORPUS VERIFICATION FAILED:")
        for failure in failures:
            print("  -", failure)
        return 1
    print(f"corpus ok: {len(POSITIVES)} positives, {len(NEGATIVES)} negatives")
    return 0


if __name__ == "__main__":
    sys.exit(build())
