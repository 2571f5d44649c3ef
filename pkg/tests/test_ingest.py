import json
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asdkb.ingest import (
    LinkOption,
    SourceRecord,
    default_tokenizer,
    fuse_hospitals,
    fuse_physicians,
    ingest_all,
    link_corresponding_symptoms,
    link_match_standard,
    merge_fields,
)
from asdkb.namespaces import instance_iri
from asdkb.ontology import check_domain_range
from asdkb.resources import fixture_dir
from asdkb.screening import Polarity
from asdkb.store import Iri
from asdkb.textutil import Tokenizer, normalize, string_similarity, tfidf_keywords

from oracles import closure_partition

TOK = default_tokenizer()


def hospital(rid, address="", contact=""):
    return SourceRecord(
        kind="hospital",
        fields={"id": rid, "Name": f"医院{rid}", "Address": address, "ContactDetails": contact},
    )


def physician(rid, name, title, work_at):
    return SourceRecord(
        kind="physician",
        fields={"id": rid, "Name": name, "Title": title, "workAt": work_at},
    )


# --- normalization / tokenization ---------------------------------------------


def test_normalize_fullwidth_and_case():
    # full-width digits/punctuation fold to half-width; ASCII lowercases;
    # full-width letters are left alone by design
    assert normalize("  ０１０－６２００　BC  ") == "010-6200 bc"
    assert normalize("０１０－ＡＢ") == "010-ＡＢ"


def test_tokenize_empty():
    assert TOK.tokenize("") == []


def test_tokenize_ascii_whitespace_split():
    assert TOK.tokenize("eye contact") == ["eye", "contact"]


def test_tokenize_golden_zh():
    # frozen output of the bundled dictionary tokenizer
    assert TOK.tokenize("不会进行对视") == ["不会", "进行", "对视"]
    assert TOK.tokenize("眼神接触、手势和面部表情的使用存在缺乏或减少") == [
        "眼神接触", "手势", "面部表情", "使用", "存在", "缺乏", "减少",
    ]


def test_tokenize_uncovered_chars_become_single_tokens():
    tok = Tokenizer(dictionary={"对视"}, stopwords=set())
    assert tok.tokenize("猫对视狗") == ["猫", "对视", "狗"]


# --- similarity ----------------------------------------------------------------


def test_similarity_identical_and_disjoint():
    assert string_similarity(["a", "b"], ["b", "a"]) == 1.0
    assert string_similarity(["a"], ["b"]) == 0.0
    assert string_similarity([], []) == 0.0


def test_similarity_partial_overlap():
    assert string_similarity(["x", "y"], ["y"]) == pytest.approx(2 / 3)


@given(
    st.lists(st.sampled_from("abcdef"), max_size=6),
    st.lists(st.sampled_from("abcdef"), max_size=6),
)
def test_similarity_symmetric_bounded(a, b):
    s = string_similarity(a, b)
    assert s == string_similarity(b, a)
    assert 0.0 <= s <= 1.0
    if s == 1.0:
        assert set(a) == set(b) and a


# --- tf-idf ---------------------------------------------------------------------


def test_tfidf_everywhere_term_scores_zero():
    corpus = [["a", "b"], ["a"], ["a", "c"]]
    scores = dict(tfidf_keywords(corpus, 1, 10))
    assert scores["a"] == 0.0


def test_tfidf_hand_computed_value():
    corpus = [["a", "b"], ["b"]]
    top = tfidf_keywords(corpus, 1, 1)
    assert top == [("a", pytest.approx(0.5 * math.log(2)))]


def test_tfidf_k_larger_than_vocab():
    corpus = [["a", "b", "a"], ["c"]]
    assert len(tfidf_keywords(corpus, 1, 99)) == 2


def test_tfidf_rejects_bad_k():
    with pytest.raises(ValueError):
        tfidf_keywords([["a"]], 1, 0)


def test_tfidf_scores_non_increasing():
    rng = random.Random(5)
    corpus = [
        [f"t{rng.randrange(12)}" for _ in range(rng.randrange(1, 20))] for _ in range(6)
    ]
    scores = [s for _, s in tfidf_keywords(corpus, 3, 50)]
    assert all(s >= 0 for s in scores)
    assert scores == sorted(scores, reverse=True)


def test_tfidf_brute_force_oracle():
    corpus = [["a", "b", "a", "c"], ["b", "c"], ["c", "d"]]
    doc = corpus[0]
    expected = {}
    for term in set(doc):
        tf = doc.count(term) / len(doc)
        df = sum(1 for d in corpus if term in d)
        expected[term] = tf * math.log(len(corpus) / df)
    got = dict(tfidf_keywords(corpus, 1, 10))
    assert got == pytest.approx(expected)


# --- fusion ----------------------------------------------------------------------


def test_same_phone_different_name_fuses():
    classes = fuse_hospitals(
        [hospital("a", "addr1", "010-1"), hospital("b", "addr2", "010-1")]
    )
    assert [[r.record_id for r in cls] for cls in classes] == [["a", "b"]]


def test_all_distinct_stay_singletons():
    classes = fuse_hospitals(
        [hospital("a", "x", "1"), hospital("b", "y", "2"), hospital("c", "z", "3")]
    )
    assert all(len(cls) == 1 for cls in classes)


def test_empty_values_never_fuse():
    classes = fuse_hospitals([hospital("a"), hospital("b")])
    assert len(classes) == 2


def test_transitive_chain_fuses():
    # a~b via address, b~c via phone
    records = [
        hospital("a", "同一地址", "111"),
        hospital("b", "同一地址", "222"),
        hospital("c", "其他地址", "222"),
    ]
    classes = fuse_hospitals(records)
    assert [[r.record_id for r in cls] for cls in classes] == [["a", "b", "c"]]


def test_physician_fusion_requires_all_three_keys():
    hosp_class = {"h1": "h1", "h2": "h1", "h3": "h3"}
    records = [
        physician("p1", "王建国", "主任医师", "h1"),
        physician("p2", "王建国", "主任医师", "h2"),  # fused hospital -> merges
        physician("p3", "王建国", "主治医师", "h1"),  # different title
        physician("p4", "王建国", "主任医师", "h3"),  # different hospital
    ]
    classes, dangling = fuse_physicians(records, hosp_class)
    assert not dangling
    grouped = [[r.record_id for r in cls] for cls in classes]
    assert ["p1", "p2"] in grouped and ["p3"] in grouped and ["p4"] in grouped


def test_dangling_work_at_reported():
    classes, dangling = fuse_physicians(
        [physician("p1", "张三", "主治医师", "missing")], {"h1": "h1"}
    )
    assert classes == [] and [r.record_id for r in dangling] == ["p1"]


def random_hospital_records(rng, n):
    addresses = [f"地址{i}" for i in range(n // 4)] + [""]
    phones = [f"010-{i}" for i in range(n // 4)] + [""]
    return [
        hospital(f"h{i:03d}", rng.choice(addresses), rng.choice(phones))
        for i in range(n)
    ]


def hospital_related(by_id):
    def related(a, b):
        ra, rb = by_id[a], by_id[b]
        addr_a = normalize(str(ra.get("Address") or ""))
        addr_b = normalize(str(rb.get("Address") or ""))
        con_a = normalize(str(ra.get("ContactDetails") or ""))
        con_b = normalize(str(rb.get("ContactDetails") or ""))
        return (addr_a and addr_a == addr_b) or (con_a and con_a == con_b)

    return related


def test_hospital_fusion_matches_pairwise_closure_oracle():
    rng = random.Random(1234)
    records = random_hospital_records(rng, 200)
    by_id = {r.record_id: r for r in records}
    expected = closure_partition(list(by_id), hospital_related(by_id))
    got = sorted(sorted(r.record_id for r in cls) for cls in fuse_hospitals(records))
    assert got == expected


def test_physician_fusion_matches_oracle_and_shuffle_invariant():
    rng = random.Random(77)
    hospitals = random_hospital_records(rng, 40)
    by_id = {r.record_id: r for r in hospitals}
    hospital_classes = fuse_hospitals(hospitals)
    class_of = {}
    for cls in hospital_classes:
        for member in cls:
            class_of[member.record_id] = cls[0].record_id
    names = ["王伟", "李娜", "张敏"]
    titles = ["主任医师", "主治医师"]
    physicians = [
        physician(
            f"p{i:03d}", rng.choice(names), rng.choice(titles), rng.choice(list(by_id))
        )
        for i in range(100)
    ]
    p_by_id = {r.record_id: r for r in physicians}

    def related(a, b):
        ra, rb = p_by_id[a].fields, p_by_id[b].fields
        return (
            class_of[ra["workAt"]] == class_of[rb["workAt"]]
            and ra["Name"] == rb["Name"]
            and ra["Title"] == rb["Title"]
        )

    expected = closure_partition(list(p_by_id), related)
    baseline, dangling = fuse_physicians(physicians, class_of)
    assert not dangling
    assert sorted(sorted(r.record_id for r in c) for c in baseline) == expected

    for shuffle_round in range(10):
        shuffled = list(physicians)
        rng.shuffle(shuffled)
        got, _ = fuse_physicians(shuffled, class_of)
        assert [[r.record_id for r in c] for c in got] == [
            [r.record_id for r in c] for c in baseline
        ]


def test_fusion_output_is_partition():
    rng = random.Random(9)
    records = random_hospital_records(rng, 120)
    classes = fuse_hospitals(records)
    flat = [r.record_id for cls in classes for r in cls]
    assert sorted(flat) == sorted(r.record_id for r in records)
    assert len(flat) == len(set(flat))


def test_merge_fields_keeps_longest_value():
    merged = merge_fields(
        [
            SourceRecord("hospital", {"id": "a", "Name": "短", "Address": ""}),
            SourceRecord("hospital", {"id": "b", "Name": "很长的名字", "Address": "地址"}),
        ]
    )
    assert merged["Name"] == "很长的名字"
    assert merged["Address"] == "地址"


# --- link mining -----------------------------------------------------------------


def test_identical_texts_always_link():
    edges = link_corresponding_symptoms(
        [("q1", "不会进行对视")], [("s1", "不会进行对视")], 1.0, TOK
    )
    assert edges == [("q1", "s1")]


def test_threshold_one_blocks_different_token_sets():
    edges = link_corresponding_symptoms(
        [("q1", "不会进行对视")], [("s1", "很少微笑")], 1.0, TOK
    )
    assert edges == []


def test_corresponding_links_match_all_pairs_oracle(kb):
    questions = [
        (json.loads(line)["id"], json.loads(line)["Label"]["zh"])
        for line in (fixture_dir() / "questions.jsonl").read_text("utf-8").splitlines()
        if line.strip()
    ]
    symptoms = [
        (json.loads(line)["id"], json.loads(line)["Label"]["zh"])
        for line in (fixture_dir() / "symptoms.jsonl").read_text("utf-8").splitlines()
        if line.strip()
    ]
    edges = set(link_corresponding_symptoms(questions, symptoms, 0.5, TOK))
    expected = set()
    for qid, qtext in questions:
        for sid, stext in symptoms:
            sim = string_similarity(TOK.tokenize(qtext), TOK.tokenize(stext))
            if sim >= 0.5:
                expected.add((qid, sid))
    assert edges == expected
    assert edges, "fixture should produce at least one correspondingSymptom edge"


def test_match_standard_only_abnormal_extreme():
    options = [
        LinkOption("o_low", "q1", "拒绝日常安排的改变", 0.0, Polarity.ASCENDING_RISK),
        LinkOption("o_mid", "q1", "拒绝日常安排的改变", 1.0, Polarity.ASCENDING_RISK),
        LinkOption("o_high", "q1", "拒绝日常安排的改变", 2.0, Polarity.ASCENDING_RISK),
    ]
    standards = [("st1", "坚持相同性，僵化地遵守常规，拒绝日常安排的改变")]
    edges = link_match_standard(options, standards, 0.5, TOK)
    assert edges == [("o_high", "st1")]


def test_match_standard_descending_scale_uses_minimum():
    options = [
        LinkOption("o1", "q1", "拒绝日常安排的改变", 1.0, Polarity.DESCENDING_RISK),
        LinkOption("o2", "q1", "拒绝日常安排的改变", 3.0, Polarity.DESCENDING_RISK),
    ]
    standards = [("st1", "坚持相同性，僵化地遵守常规，拒绝日常安排的改变")]
    edges = link_match_standard(options, standards, 0.5, TOK)
    assert edges == [("o1", "st1")]


def test_identical_option_question_text_links():
    options = [
        LinkOption("o1", "q1", "很少微笑", 2.0, Polarity.ASCENDING_RISK),
        LinkOption("o2", "q1", "很少微笑", 0.0, Polarity.ASCENDING_RISK),
    ]
    edges = link_match_standard(options, [("st1", "很少微笑")], 0.5, TOK)
    assert ("o1", "st1") in edges and ("o2", "st1") not in edges


# --- full ingest ------------------------------------------------------------------


def test_fixture_counts_match_manifest(kb):
    manifest = json.loads((fixture_dir() / "manifest.json").read_text("utf-8"))
    assert kb.report.counts == manifest["counts"]


def test_fixture_headline_counts(kb):
    assert kb.report.counts["disease"] == 49
    assert kb.report.counts["symptom"] == 65
    assert kb.report.counts["diagnostic_standard"] == 43
    assert kb.report.counts["screening_tool"] == 20


def test_ingest_zero_violations(kb):
    assert kb.report.violations == []


def test_every_emitted_triple_passes_domain_range(kb):
    typing = {}
    from asdkb.namespaces import RDF_TYPE

    for t in kb.store.lookup(p=Iri(RDF_TYPE)):
        if isinstance(t.o, Iri):
            typing.setdefault(t.s.value, set()).add(t.o.value)
    for t in kb.store.lookup():
        assert check_domain_range(kb.schema, t, typing).ok, t


def test_counts_after_fusion_not_above_source(kb):
    for kind, count in kb.report.counts.items():
        assert count <= kb.report.source_counts[kind]


def test_every_instance_dereferenceable(kb):
    for subject in kb.store.subjects():
        assert kb.store.dereference(subject), subject


def test_missing_required_field_is_violation(tmp_path):
    src = fixture_dir()
    for name in [p.name for p in src.glob("*.jsonl")]:
        (tmp_path / name).write_text(
            (src / name).read_text("utf-8") if name != "diseases.jsonl" else "",
            encoding="utf-8",
        )
    (tmp_path / "diseases.jsonl").write_text(
        json.dumps({"id": "d1", "Label": {"zh": "某病"}}, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    result = ingest_all(tmp_path)
    assert any("missing required" in v for v in result.report.violations)
    assert result.report.counts["disease"] == 0


def test_empty_files_empty_store(tmp_path):
    from asdkb.ingest import KIND_FILES

    for name in KIND_FILES.values():
        (tmp_path / name).write_text("", encoding="utf-8")
    result = ingest_all(tmp_path, include_ontology=False)
    assert len(result.store) == 0
    assert all(count == 0 for count in result.report.counts.values())


def test_missing_file_raises(tmp_path):
    from asdkb.ingest import IngestError

    with pytest.raises(IngestError):
        ingest_all(tmp_path)


def test_fixture_merges_expected(kb):
    assert sorted(kb.report.merges) == [
        ["hosp01", "hosp02"],
        ["hosp06", "hosp07"],
        ["phy01", "phy04"],
        ["phy10", "phy12"],
    ]


def test_explanation_anchor_links_present(kb):
    q_eye = kb.catalog.questions[instance_iri("q_abc_3")]
    assert instance_iri("symptom64") in q_eye.corresponding_symptoms
    opt = kb.catalog.options[instance_iri("opt_cars2_1_4")]
    assert instance_iri("standard1") in opt.matched_standards
