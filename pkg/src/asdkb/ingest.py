"""Load curated source records, fuse duplicates, mine cross-links, and emit
ontology-validated triples plus the typed catalogs the services run on."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from . import textutil
from .namespaces import (
    OWL_EQUIVALENTCLASS,
    RDF_TYPE,
    RDFS_COMMENT,
    RDFS_LABEL,
    RDFS_SUBCLASSOF,
    class_iri,
    instance_iri,
    property_iri,
)
from .ontology import OntologySchema, PropertyKind, check_domain_range, load_ontology
from .recommend import (
    Division,
    DivisionIndex,
    DivisionLevel,
    Hospital,
    Physician,
    hospital_level_rank,
    title_rank,
)
from .resources import default_ontology_text, load_word_list
from .screening import (
    Option,
    Polarity,
    ScreeningCatalog,
    ScreeningQuestion,
    ScreeningTool,
)
from .store import Iri, Literal, LiteralTag, Triple, TripleStore
from .store import en as en_lit
from .store import typed_float, typed_integer
from .store import zh as zh_lit

OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_DATATYPE_PROPERTY = "http://www.w3.org/2002/07/owl#DatatypeProperty"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"


class IngestError(Exception):
    pass


KIND_FILES = {
    "disease": "diseases.jsonl",
    "symptom": "symptoms.jsonl",
    "diagnostic_standard": "standards.jsonl",
    "screening_tool": "tools.jsonl",
    "screening_question": "questions.jsonl",
    "option": "options.jsonl",
    "physician": "physicians.jsonl",
    "hospital": "hospitals.jsonl",
    "division": "divisions.jsonl",
    "intervention": "interventions.jsonl",
}

REQUIRED_FIELDS = {
    "disease": ("id", "Label", "SCTID", "ICD10Code"),
    "symptom": ("id", "Label"),
    "diagnostic_standard": ("id", "Label"),
    "screening_tool": (
        "id",
        "Label",
        "User",
        "AgeMin",
        "AgeMax",
        "ScreeningBoundary",
        "questions",
    ),
    "screening_question": ("id", "tool", "Label", "options"),
    "option": ("id", "question", "Label", "Score"),
    "physician": ("id", "Name", "Title", "workAt"),
    "hospital": ("id", "Name"),
    "division": ("code", "Name", "level", "Population", "Lat", "Lng"),
    "intervention": ("id", "Label"),
}

DEFAULT_CLASS = {
    "disease": "Disease",
    "symptom": "OtherSymptoms",
    "diagnostic_standard": "DiagnosticStandard",
    "intervention": "EvidenceBasedPractice",
}


@dataclass
class SourceRecord:
    kind: str
    fields: Dict[str, Any]

    @property
    def record_id(self) -> str:
        return str(self.fields.get("id") or self.fields.get("code") or "")

    def get(self, name: str, default: Any = None) -> Any:
        return self.fields.get(name, default)


@dataclass
class IngestReport:
    counts: Dict[str, int] = field(default_factory=dict)
    source_counts: Dict[str, int] = field(default_factory=dict)
    merges: List[List[str]] = field(default_factory=list)
    link_counts: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)


@dataclass
class IngestResult:
    store: TripleStore
    report: IngestReport
    schema: OntologySchema
    catalog: ScreeningCatalog
    divisions: DivisionIndex
    hospitals: Dict[str, Hospital]
    physicians: Dict[str, Physician]

    def __iter__(self):
        # supports the (store, report) unpacking convention
        return iter((self.store, self.report))


def default_tokenizer() -> textutil.Tokenizer:
    return textutil.Tokenizer(
        dictionary=load_word_list("dictionary.txt"),
        stopwords=load_word_list("stopwords.txt"),
    )


# --- record loading ----------------------------------------------------------


def load_records(
    data_dir: Path, kind: str, violations: List[str]
) -> List[SourceRecord]:
    path = Path(data_dir) / KIND_FILES[kind]
    if not path.exists():
        raise IngestError(f"missing record file: {path}")
    records = []
    seen_ids: Set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"{path.name}:{lineno}: bad JSON ({exc})")
            record = SourceRecord(kind=kind, fields=payload)
            missing = [
                f
                for f in REQUIRED_FIELDS[kind]
                if payload.get(f) in (None, "", [], {})
            ]
            if missing:
                violations.append(
                    f"{path.name}:{lineno}: record {record.record_id or '?'} "
                    f"missing required {', '.join(missing)}; skipped"
                )
                continue
            if record.record_id in seen_ids:
                violations.append(
                    f"{path.name}:{lineno}: duplicate id {record.record_id}; skipped"
                )
                continue
            seen_ids.add(record.record_id)
            records.append(record)
    return records


# --- fusion ------------------------------------------------------------------


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _value_length(value: Any) -> int:
    if value in (None, "", [], {}):
        return 0
    if isinstance(value, str):
        return len(value)
    return len(json.dumps(value, ensure_ascii=False, sort_keys=True))


def _value_order(value: Any) -> bytes:
    if isinstance(value, str):
        return value.encode("utf-8")
    return json.dumps(value, ensure_ascii=False, sort_keys=True).encode("utf-8")


def merge_fields(records: Sequence[SourceRecord]) -> Dict[str, Any]:
    """Keep the longest non-empty value per field; ties break by byte order."""
    merged: Dict[str, Any] = {}
    names: Set[str] = set()
    for r in records:
        names.update(r.fields)
    for name in names:
        candidates = [
            r.fields[name] for r in records if _value_length(r.fields.get(name)) > 0
        ]
        if not candidates:
            continue
        candidates.sort(key=lambda v: (-_value_length(v), _value_order(v)))
        merged[name] = candidates[0]
    return merged


def _sorted_classes(
    records: Sequence[SourceRecord], uf: UnionFind
) -> List[List[SourceRecord]]:
    groups: Dict[int, List[SourceRecord]] = {}
    for idx, record in enumerate(records):
        groups.setdefault(uf.find(idx), []).append(record)
    classes = list(groups.values())
    for cls in classes:
        cls.sort(key=lambda r: r.record_id)
    classes.sort(key=lambda cls: cls[0].record_id)
    return classes


def fuse_hospitals(records: Sequence[SourceRecord]) -> List[List[SourceRecord]]:
    """Equivalence classes under shared normalized Address or ContactDetails."""
    records = sorted(records, key=lambda r: r.record_id)
    uf = UnionFind(len(records))
    by_address: Dict[str, int] = {}
    by_contact: Dict[str, int] = {}
    for idx, record in enumerate(records):
        address = textutil.normalize(str(record.get("Address") or ""))
        contact = textutil.normalize(str(record.get("ContactDetails") or ""))
        if address:
            if address in by_address:
                uf.union(idx, by_address[address])
            else:
                by_address[address] = idx
        if contact:
            if contact in by_contact:
                uf.union(idx, by_contact[contact])
            else:
                by_contact[contact] = idx
    return _sorted_classes(records, uf)


def fuse_physicians(
    records: Sequence[SourceRecord],
    hospital_class_of: Mapping[str, str],
) -> Tuple[List[List[SourceRecord]], List[SourceRecord]]:
    """Group physicians equivalent under (fused workAt, Name, Title).

    Returns (classes, dangling) where dangling lists records whose workAt
    does not resolve to any hospital record.
    """
    usable = []
    dangling = []
    for record in sorted(records, key=lambda r: r.record_id):
        if str(record.get("workAt")) in hospital_class_of:
            usable.append(record)
        else:
            dangling.append(record)
    uf = UnionFind(len(usable))
    by_key: Dict[Tuple[str, str, str], int] = {}
    for idx, record in enumerate(usable):
        key = (
            hospital_class_of[str(record.get("workAt"))],
            textutil.normalize(str(record.get("Name") or "")),
            textutil.normalize(str(record.get("Title") or "")),
        )
        if key in by_key:
            uf.union(idx, by_key[key])
        else:
            by_key[key] = idx
    return _sorted_classes(usable, uf), dangling


# --- link mining -------------------------------------------------------------


def link_corresponding_symptoms(
    questions: Sequence[Tuple[str, str]],
    symptoms: Sequence[Tuple[str, str]],
    theta_sym: float,
    tokenizer: Optional[textutil.Tokenizer] = None,
) -> List[Tuple[str, str]]:
    """Edges (question_id, symptom_id) with token-Dice similarity >= theta."""
    if not 0 <= theta_sym <= 1:
        raise IngestError("theta_sym must lie in [0, 1]")
    tok = tokenizer or default_tokenizer()
    sym_tokens = [(sid, tok.tokenize(text)) for sid, text in symptoms]
    edges = []
    for qid, qtext in questions:
        q_tokens = tok.tokenize(qtext)
        for sid, s_tokens in sym_tokens:
            if textutil.string_similarity(q_tokens, s_tokens) >= theta_sym:
                edges.append((qid, sid))
    return edges


@dataclass(frozen=True)
class LinkOption:
    """What matchStandard mining needs to know about one option."""

    option_id: str
    question_id: str
    question_text: str
    score: float
    polarity: Polarity


def link_match_standard(
    options: Sequence[LinkOption],
    standards: Sequence[Tuple[str, str]],
    theta_std: float,
    tokenizer: Optional[textutil.Tokenizer] = None,
) -> List[Tuple[str, str]]:
    """Edges (option_id, standard_id) for abnormal-extreme options only."""
    if not 0 <= theta_std <= 1:
        raise IngestError("theta_std must lie in [0, 1]")
    tok = tokenizer or default_tokenizer()
    by_question: Dict[str, List[LinkOption]] = {}
    for option in options:
        by_question.setdefault(option.question_id, []).append(option)
    std_tokens = [(stid, tok.tokenize(text)) for stid, text in standards]
    edges = []
    for siblings in by_question.values():
        scores = [o.score for o in siblings]
        polarity = siblings[0].polarity
        abnormal = max(scores) if polarity is Polarity.ASCENDING_RISK else min(scores)
        q_tokens = tok.tokenize(siblings[0].question_text)
        for option in siblings:
            if option.score != abnormal:
                continue
            for stid, s_tokens in std_tokens:
                if textutil.string_similarity(q_tokens, s_tokens) >= theta_std:
                    edges.append((option.option_id, stid))
    return edges


# --- helpers for emission ----------------------------------------------------


def _bilingual(value: Any) -> List[Literal]:
    """Language-tagged literals from a string or a {'zh':…, 'en':…} object."""
    literals = []
    if isinstance(value, str):
        if value:
            literals.append(zh_lit(value))
    elif isinstance(value, Mapping):
        if value.get("zh"):
            literals.append(zh_lit(str(value["zh"])))
        if value.get("en"):
            literals.append(en_lit(str(value["en"])))
    return literals


def _zh_text(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, Mapping):
        return str(value.get("zh") or value.get("en") or "")
    return str(value or "")


def _roles(value: Any) -> Tuple[str, ...]:
    if isinstance(value, str):
        return tuple(v.strip() for v in value.split("/") if v.strip())
    return tuple(str(v) for v in value)


class _Emitter:
    """Accumulates candidate triples plus the typing map for validation."""

    def __init__(self):
        self.triples: List[Triple] = []
        self.typing: Dict[str, Set[str]] = {}

    def type_of(self, subject: str, class_local: str) -> None:
        ciri = class_iri(class_local)
        self.typing.setdefault(subject, set()).add(ciri)
        self.triples.append(Triple(Iri(subject), Iri(RDF_TYPE), Iri(ciri)))

    def emit(self, subject: str, prop_local: str, obj) -> None:
        self.triples.append(Triple(Iri(subject), Iri(property_iri(prop_local)), obj))

    def emit_raw(self, subject: str, predicate: str, obj) -> None:
        self.triples.append(Triple(Iri(subject), Iri(predicate), obj))

    def emit_bilingual(self, subject: str, prop_local: str, value: Any) -> None:
        for literal in _bilingual(value):
            self.emit(subject, prop_local, literal)

    def emit_plain(self, subject: str, prop_local: str, value: Any) -> None:
        text = str(value).strip()
        if text:
            self.emit(subject, prop_local, Literal(text, LiteralTag.PLAIN))


def emit_ontology_triples(schema: OntologySchema, emitter: _Emitter) -> None:
    for cls in schema.classes.values():
        emitter.emit_raw(cls.iri, RDF_TYPE, Iri(OWL_CLASS))
        emitter.emit_raw(cls.iri, RDFS_LABEL, zh_lit(cls.label_zh))
        emitter.emit_raw(cls.iri, RDFS_LABEL, en_lit(cls.label_en))
        if cls.comment:
            emitter.emit_raw(cls.iri, RDFS_COMMENT, zh_lit(cls.comment))
        for parent in sorted(cls.parents):
            emitter.emit_raw(cls.iri, RDFS_SUBCLASSOF, Iri(parent))
        for target, relation in sorted(cls.external_equivalents):
            predicate = (
                OWL_EQUIVALENTCLASS if relation == "equivalentClass" else RDFS_SUBCLASSOF
            )
            emitter.emit_raw(cls.iri, predicate, Iri(target))
    for prop in schema.properties.values():
        owl_kind = (
            OWL_DATATYPE_PROPERTY
            if prop.kind is PropertyKind.DATATYPE
            else OWL_OBJECT_PROPERTY
        )
        emitter.emit_raw(prop.iri, RDF_TYPE, Iri(owl_kind))
        emitter.emit_raw(prop.iri, RDFS_LABEL, zh_lit(prop.label_zh))
        emitter.emit_raw(prop.iri, RDFS_LABEL, en_lit(prop.label_en))


# --- the full pipeline -------------------------------------------------------


def ingest_all(
    data_dir,
    schema: Optional[OntologySchema] = None,
    theta_sym: float = 0.5,
    theta_std: float = 0.5,
    include_ontology: bool = True,
    tokenizer: Optional[textutil.Tokenizer] = None,
) -> IngestResult:
    """Run the whole ingest: load, fuse, link, emit, validate."""
    data_dir = Path(data_dir)
    schema = schema or load_ontology(default_ontology_text())
    tok = tokenizer or default_tokenizer()
    report = IngestReport()
    violations = report.violations

    records: Dict[str, List[SourceRecord]] = {
        kind: load_records(data_dir, kind, violations) for kind in KIND_FILES
    }
    for kind, recs in records.items():
        report.source_counts[kind] = len(recs)

    # fusion: hospitals first, then physicians keyed on fused hospitals
    hospital_classes = fuse_hospitals(records["hospital"])
    hospital_class_of: Dict[str, str] = {}
    for cls in hospital_classes:
        rep = cls[0].record_id
        for member in cls:
            hospital_class_of[member.record_id] = rep
    physician_classes, dangling = fuse_physicians(
        records["physician"], hospital_class_of
    )
    for record in dangling:
        violations.append(
            f"physician {record.record_id}: workAt {record.get('workAt')!r} "
            "does not resolve; skipped"
        )
    for cls in hospital_classes + physician_classes:
        if len(cls) > 1:
            report.merges.append([r.record_id for r in cls])

    fused_hospitals = [
        SourceRecord(kind="hospital", fields=merge_fields(cls))
        for cls in hospital_classes
    ]
    for record, cls in zip(fused_hospitals, hospital_classes):
        record.fields["id"] = cls[0].record_id
    fused_physicians = [
        SourceRecord(kind="physician", fields=merge_fields(cls))
        for cls in physician_classes
    ]
    for record, cls in zip(fused_physicians, physician_classes):
        record.fields["id"] = cls[0].record_id
        record.fields["workAt"] = hospital_class_of[str(record.fields["workAt"])]

    # mined links
    tool_polarity: Dict[str, Polarity] = {
        r.record_id: Polarity(r.get("Polarity", Polarity.ASCENDING_RISK.value))
        for r in records["screening_tool"]
    }
    question_text = {r.record_id: _zh_text(r.get("Label")) for r in records["screening_question"]}
    question_tool = {r.record_id: str(r.get("tool")) for r in records["screening_question"]}
    symptom_texts = [
        (r.record_id, _zh_text(r.get("Label"))) for r in records["symptom"]
    ]
    standard_texts = [
        (r.record_id, _zh_text(r.get("Label"))) for r in records["diagnostic_standard"]
    ]
    corresponding = link_corresponding_symptoms(
        [(qid, text) for qid, text in question_text.items()],
        symptom_texts,
        theta_sym,
        tok,
    )
    link_options = []
    for record in records["option"]:
        qid = str(record.get("question"))
        if qid not in question_text:
            violations.append(
                f"option {record.record_id}: unknown question {qid}; skipped"
            )
            continue
        polarity = tool_polarity.get(question_tool.get(qid, ""), Polarity.ASCENDING_RISK)
        link_options.append(
            LinkOption(
                option_id=record.record_id,
                question_id=qid,
                question_text=question_text[qid],
                score=float(record.get("Score")),
                polarity=polarity,
            )
        )
    matches = link_match_standard(link_options, standard_texts, theta_std, tok)
    report.link_counts["correspondingSymptom"] = len(corresponding)
    report.link_counts["matchStandard"] = len(matches)

    corresponding_by_q: Dict[str, Set[str]] = {}
    for qid, sid in corresponding:
        corresponding_by_q.setdefault(qid, set()).add(sid)
    matches_by_option: Dict[str, Set[str]] = {}
    for oid, stid in matches:
        matches_by_option.setdefault(oid, set()).add(stid)

    emitter = _Emitter()
    if include_ontology:
        emit_ontology_triples(schema, emitter)

    known_ids: Dict[str, Set[str]] = {
        kind: {r.record_id for r in recs} for kind, recs in records.items()
    }

    def check_ref(owner: str, kind: str, target: str) -> bool:
        if target in known_ids[kind]:
            return True
        violations.append(f"{owner}: dangling {kind} reference {target!r}")
        return False

    # diseases
    for record in records["disease"]:
        iri = instance_iri(record.record_id)
        emitter.type_of(iri, str(record.get("class", DEFAULT_CLASS["disease"])))
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        emitter.emit_plain(iri, "SCTID", record.get("SCTID"))
        emitter.emit_plain(iri, "ICD10Code", record.get("ICD10Code"))
        for synonym in record.get("Synonym", []) or []:
            emitter.emit_bilingual(iri, "Synonym", synonym)
        emitter.emit_bilingual(iri, "Introduction", record.get("Introduction"))
        emitter.emit_bilingual(iri, "PatientGroups", record.get("PatientGroups"))
        emitter.emit_bilingual(iri, "Pathogeny", record.get("Pathogeny"))
        for sid in record.get("symptoms", []) or []:
            if check_ref(record.record_id, "symptom", sid):
                emitter.emit(iri, "hasSymptom", Iri(instance_iri(sid)))
        for stid in record.get("standards", []) or []:
            if check_ref(record.record_id, "diagnostic_standard", stid):
                emitter.emit(iri, "hasDiagnosticStandard", Iri(instance_iri(stid)))
        for mid in record.get("interventions", []) or []:
            if check_ref(record.record_id, "intervention", mid):
                emitter.emit(iri, "hasInterventionMethod", Iri(instance_iri(mid)))
        for did in record.get("complications", []) or []:
            if check_ref(record.record_id, "disease", did):
                emitter.emit(iri, "hasComplication", Iri(instance_iri(did)))

    # symptoms
    for record in records["symptom"]:
        iri = instance_iri(record.record_id)
        emitter.type_of(iri, str(record.get("class", DEFAULT_CLASS["symptom"])))
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        emitter.emit_bilingual(iri, "Introduction", record.get("Introduction"))

    # diagnostic standards
    for record in records["diagnostic_standard"]:
        iri = instance_iri(record.record_id)
        emitter.type_of(
            iri, str(record.get("class", DEFAULT_CLASS["diagnostic_standard"]))
        )
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        for sid in record.get("symptoms", []) or []:
            if check_ref(record.record_id, "symptom", sid):
                emitter.emit(iri, "relatedSymptom", Iri(instance_iri(sid)))

    # interventions
    for record in records["intervention"]:
        iri = instance_iri(record.record_id)
        emitter.type_of(iri, str(record.get("class", DEFAULT_CLASS["intervention"])))
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        emitter.emit_bilingual(iri, "Introduction", record.get("Introduction"))

    # divisions
    division_objects: List[Division] = []
    division_ids = known_ids["division"]
    for record in records["division"]:
        code = record.record_id
        iri = instance_iri("division" + code)
        try:
            level = DivisionLevel(str(record.get("level")))
        except ValueError:
            violations.append(
                f"division {code}: bad level {record.get('level')!r}; skipped"
            )
            continue
        class_local = {"province": "Province", "city": "City", "district": "District"}[
            level.value
        ]
        emitter.type_of(iri, class_local)
        emitter.emit_bilingual(iri, "Label", record.get("Name"))
        for alias in record.get("aliases", []) or []:
            emitter.emit(iri, "Label", zh_lit(str(alias)))
        emitter.emit(iri, "Population", typed_integer(int(record.get("Population"))))
        emitter.emit(iri, "Lat", typed_float(float(record.get("Lat"))))
        emitter.emit(iri, "Lng", typed_float(float(record.get("Lng"))))
        parent = record.get("parent")
        if parent is not None:
            if str(parent) in division_ids:
                emitter.emit(iri, "locateAt", Iri(instance_iri("division" + str(parent))))
                emitter.emit(
                    instance_iri("division" + str(parent)), "hasSubDivision", Iri(iri)
                )
            else:
                violations.append(f"division {code}: unknown parent {parent!r}")
        division_objects.append(
            Division(
                code=code,
                name=_zh_text(record.get("Name")),
                level=level,
                parent=str(parent) if parent is not None else None,
                population=int(record.get("Population")),
                lat=float(record.get("Lat")),
                lng=float(record.get("Lng")),
            )
        )
    divisions = DivisionIndex(division_objects)

    # hospitals (fused)
    hospitals: Dict[str, Hospital] = {}
    for record in fused_hospitals:
        iri = instance_iri(record.record_id)
        emitter.type_of(iri, "Hospital")
        emitter.emit_bilingual(iri, "Name", record.get("Name"))
        emitter.emit_bilingual(iri, "Address", record.get("Address"))
        emitter.emit_plain(iri, "ContactDetails", record.get("ContactDetails"))
        emitter.emit_bilingual(iri, "HospitalLevel", record.get("HospitalLevel"))
        division_code = str(record.get("division") or "")
        if division_code not in divisions.divisions:
            violations.append(
                f"hospital {record.record_id}: unknown division {division_code!r}; skipped"
            )
            continue
        lat = float(record.get("Lat"))
        lng = float(record.get("Lng"))
        emitter.emit(iri, "Lat", typed_float(lat))
        emitter.emit(iri, "Lng", typed_float(lng))
        emitter.emit(iri, "locateAt", Iri(instance_iri("division" + division_code)))
        for ancestor in divisions.ancestors(division_code):
            emitter.emit(iri, "locateAt", Iri(instance_iri("division" + ancestor.code)))
        hospitals[iri] = Hospital(
            iri=iri,
            name=_zh_text(record.get("Name")),
            address=_zh_text(record.get("Address")),
            contact=str(record.get("ContactDetails") or ""),
            level_label=_zh_text(record.get("HospitalLevel")),
            level_rank=hospital_level_rank(_zh_text(record.get("HospitalLevel"))),
            lat=lat,
            lng=lng,
            division_code=division_code,
        )

    # physicians (fused)
    physicians: Dict[str, Physician] = {}
    for record in fused_physicians:
        hospital_iri = instance_iri(str(record.get("workAt")))
        if hospital_iri not in hospitals:
            violations.append(
                f"physician {record.record_id}: fused hospital "
                f"{record.get('workAt')!r} was not emitted; skipped"
            )
            continue
        iri = instance_iri(record.record_id)
        emitter.type_of(iri, "Physician")
        emitter.emit_bilingual(iri, "Name", record.get("Name"))
        emitter.emit_bilingual(iri, "Title", record.get("Title"))
        emitter.emit_bilingual(iri, "Specialty", record.get("Specialty"))
        emitter.emit_bilingual(iri, "HospitalDepartment", record.get("HospitalDepartment"))
        emitter.emit(iri, "workAt", Iri(hospital_iri))
        for did in record.get("expertIn", []) or []:
            if check_ref(record.record_id, "disease", did):
                emitter.emit(iri, "expertIn", Iri(instance_iri(did)))
        physicians[iri] = Physician(
            iri=iri,
            name=_zh_text(record.get("Name")),
            title=_zh_text(record.get("Title")),
            title_rank=title_rank(_zh_text(record.get("Title"))),
            specialty=_zh_text(record.get("Specialty")),
            department=_zh_text(record.get("HospitalDepartment")),
            work_at=hospital_iri,
            thumbs_up=int(record.get("ThumbsUp", 0) or 0),
            thumbs_down=int(record.get("ThumbsDown", 0) or 0),
        )

    # screening catalog: tools, questions, options + mined links
    catalog_tools: Dict[str, ScreeningTool] = {}
    catalog_questions: Dict[str, ScreeningQuestion] = {}
    catalog_options: Dict[str, Option] = {}

    for record in records["option"]:
        iri = instance_iri(record.record_id)
        emitter.type_of(iri, "Option")
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        emitter.emit(iri, "Score", typed_float(float(record.get("Score"))))
        standards = {
            instance_iri(stid) for stid in matches_by_option.get(record.record_id, set())
        }
        for stid in sorted(matches_by_option.get(record.record_id, set())):
            emitter.emit(iri, "matchStandard", Iri(instance_iri(stid)))
        catalog_options[iri] = Option(
            iri=iri,
            text=_zh_text(record.get("Label")),
            score=float(record.get("Score")),
            matched_standards=standards,
        )

    options_by_question: Dict[str, List[str]] = {}
    for record in records["option"]:
        options_by_question.setdefault(str(record.get("question")), []).append(
            record.record_id
        )

    for record in records["screening_question"]:
        iri = instance_iri(record.record_id)
        listed = [
            str(o)
            for o in record.get("options", [])
            if check_ref(record.record_id, "option", str(o))
        ]
        if len(set(listed)) < 2:
            violations.append(
                f"question {record.record_id}: fewer than 2 options; skipped"
            )
            continue
        emitter.type_of(iri, "ScreeningQuestion")
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        for oid in listed:
            emitter.emit(iri, "hasOption", Iri(instance_iri(oid)))
        symptoms = corresponding_by_q.get(record.record_id, set())
        for sid in sorted(symptoms):
            emitter.emit(iri, "correspondingSymptom", Iri(instance_iri(sid)))
        related = {
            stid
            for oid in listed
            for stid in matches_by_option.get(oid, set())
        }
        for stid in sorted(related):
            emitter.emit(iri, "relatedStandard", Iri(instance_iri(stid)))
        catalog_questions[iri] = ScreeningQuestion(
            iri=iri,
            text=_zh_text(record.get("Label")),
            options=[instance_iri(o) for o in listed],
            corresponding_symptoms={instance_iri(s) for s in symptoms},
        )

    for record in records["screening_tool"]:
        iri = instance_iri(record.record_id)
        listed_questions = [
            str(q)
            for q in record.get("questions", [])
            if instance_iri(str(q)) in catalog_questions
        ]
        if not listed_questions:
            violations.append(
                f"tool {record.record_id}: no usable questions; skipped"
            )
            continue
        if float(record.get("AgeMin")) > float(record.get("AgeMax")):
            violations.append(
                f"tool {record.record_id}: AgeMin exceeds AgeMax; skipped"
            )
            continue
        emitter.type_of(iri, "ScreeningTool")
        emitter.emit_bilingual(iri, "Label", record.get("Label"))
        emitter.emit_bilingual(iri, "Introduction", record.get("Introduction"))
        emitter.emit_plain(iri, "Author", record.get("Author"))
        emitter.emit_plain(iri, "User", "/".join(_roles(record.get("User"))))
        emitter.emit(iri, "AgeMin", typed_float(float(record.get("AgeMin"))))
        emitter.emit(iri, "AgeMax", typed_float(float(record.get("AgeMax"))))
        if record.get("Time") is not None:
            emitter.emit(iri, "Time", typed_integer(int(record.get("Time"))))
        emitter.emit_bilingual(iri, "Rule", record.get("Rule"))
        emitter.emit(
            iri, "ScreeningBoundary", typed_float(float(record.get("ScreeningBoundary")))
        )
        tool_symptoms: Set[str] = set()
        for qid in listed_questions:
            emitter.emit(iri, "hasQuestion", Iri(instance_iri(qid)))
            tool_symptoms |= corresponding_by_q.get(qid, set())
        for sid in sorted(tool_symptoms):
            emitter.emit(iri, "investigatesSymptom", Iri(instance_iri(sid)))
        for did in record.get("screensFor", []) or []:
            if check_ref(record.record_id, "disease", did):
                emitter.emit(iri, "screensFor", Iri(instance_iri(did)))
        catalog_tools[iri] = ScreeningTool(
            iri=iri,
            name=_zh_text(record.get("Label")),
            introduction=_zh_text(record.get("Introduction")),
            author=str(record.get("Author") or ""),
            user=_roles(record.get("User")),
            age_min=float(record.get("AgeMin")),
            age_max=float(record.get("AgeMax")),
            time_minutes=int(record.get("Time", 0) or 0),
            rule=_zh_text(record.get("Rule")),
            boundary=float(record.get("ScreeningBoundary")),
            polarity=Polarity(str(record.get("Polarity", Polarity.ASCENDING_RISK.value))),
            language=str(record.get("Language", "zh")),
            questions=[instance_iri(q) for q in listed_questions],
        )

    catalog = ScreeningCatalog(
        tools=catalog_tools, questions=catalog_questions, options=catalog_options
    )

    # validate every candidate triple against the schema, then build the store
    store = TripleStore()
    for triple in emitter.triples:
        verdict = check_domain_range(schema, triple, emitter.typing)
        if verdict.ok:
            store.insert(triple)
        else:
            violations.append(verdict.reason)

    report.counts = {
        "disease": len(records["disease"]),
        "symptom": len(records["symptom"]),
        "diagnostic_standard": len(records["diagnostic_standard"]),
        "screening_tool": len(catalog_tools),
        "screening_question": len(catalog_questions),
        "option": len(catalog_options),
        "physician": len(physicians),
        "hospital": len(hospitals),
        "division": len(division_objects),
        "intervention": len(records["intervention"]),
    }
    store.freeze()
    return IngestResult(
        store=store,
        report=report,
        schema=schema,
        catalog=catalog,
        divisions=divisions,
        hospitals=hospitals,
        physicians=physicians,
    )
