"""Faceted expert recommendation: division-tree candidate generation,
haversine distance fallback, three-key ranking, and thumbs voting."""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple


class RecommendError(Exception):
    pass


class UnknownDivisionError(RecommendError):
    pass


class UnknownPhysicianError(RecommendError):
    pass


class DivisionLevel(str, Enum):
    PROVINCE = "province"
    CITY = "city"
    DISTRICT = "district"


#: Physician title ordering, higher is better.  Extensible via config.
DEFAULT_TITLE_RANKS = {
    "主任医师": 4,
    "副主任医师": 3,
    "主治医师": 2,
    "住院医师": 1,
}

#: Hospital grade ordering, matched by substring, first hit wins.
DEFAULT_LEVEL_RANKS = (
    ("三级甲等", 6),
    ("三甲", 6),
    ("三级乙等", 5),
    ("三乙", 5),
    ("二级甲等", 4),
    ("二甲", 4),
    ("二级乙等", 3),
    ("二乙", 3),
    ("一级", 2),
)


def title_rank(title: str, table: Optional[Dict[str, int]] = None) -> int:
    return (table or DEFAULT_TITLE_RANKS).get(title.strip(), 0)


def hospital_level_rank(level: str, table=DEFAULT_LEVEL_RANKS) -> int:
    for needle, rank in table:
        if needle in level:
            return rank
    return 1 if level.strip() else 0


@dataclass(frozen=True)
class Division:
    code: str
    name: str
    level: DivisionLevel
    parent: Optional[str]
    population: int
    lat: float
    lng: float


@dataclass
class Hospital:
    iri: str
    name: str
    address: str
    contact: str
    level_label: str
    level_rank: int
    lat: float
    lng: float
    division_code: str


@dataclass
class Physician:
    iri: str
    name: str
    title: str
    title_rank: int
    specialty: str
    department: str
    work_at: str
    thumbs_up: int = 0
    thumbs_down: int = 0

    @property
    def net_thumbs(self) -> int:
        return self.thumbs_up - self.thumbs_down


class DivisionIndex:
    """The province -> city -> district tree."""

    _PARENT_LEVEL = {
        DivisionLevel.DISTRICT: DivisionLevel.CITY,
        DivisionLevel.CITY: DivisionLevel.PROVINCE,
    }

    def __init__(self, divisions: Sequence[Division]):
        self.divisions: Dict[str, Division] = {}
        self.children: Dict[str, List[str]] = {}
        for d in divisions:
            if d.code in self.divisions:
                raise RecommendError(f"duplicate division code: {d.code}")
            self.divisions[d.code] = d
        for d in divisions:
            if d.level is DivisionLevel.PROVINCE:
                if d.parent is not None:
                    raise RecommendError(f"province {d.code} must not have a parent")
                continue
            parent = self.divisions.get(d.parent or "")
            if parent is None:
                raise RecommendError(f"division {d.code} has unknown parent {d.parent}")
            if parent.level is not self._PARENT_LEVEL[d.level]:
                raise RecommendError(
                    f"division {d.code} ({d.level.value}) has parent of level "
                    f"{parent.level.value}"
                )
            self.children.setdefault(parent.code, []).append(d.code)
        for codes in self.children.values():
            codes.sort()

    def get(self, code: str) -> Division:
        division = self.divisions.get(code)
        if division is None:
            raise UnknownDivisionError(f"unknown division code: {code}")
        return division

    def subtree(self, code: str) -> Set[str]:
        """The division itself plus everything below it."""
        self.get(code)
        out: Set[str] = set()
        stack = [code]
        while stack:
            cur = stack.pop()
            out.add(cur)
            stack.extend(self.children.get(cur, ()))
        return out

    def ancestors(self, code: str) -> List[Division]:
        chain = []
        current = self.get(code)
        while current.parent is not None:
            current = self.get(current.parent)
            chain.append(current)
        return chain

    def tree(self) -> List[dict]:
        """Nested province/city/district structure for the facet UI."""

        def node(code: str) -> dict:
            d = self.divisions[code]
            return {
                "code": d.code,
                "name": d.name,
                "level": d.level.value,
                "population": d.population,
                "children": [node(c) for c in self.children.get(code, [])],
            }

        provinces = sorted(
            c for c, d in self.divisions.items() if d.level is DivisionLevel.PROVINCE
        )
        return [node(c) for c in provinces]


def haversine_km(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    """Great-circle distance in kilometers (Earth radius 6371.0 km)."""
    for lat, lng in (a, b):
        if not -90 <= lat <= 90:
            raise ValueError(f"latitude out of range: {lat}")
        if not -180 <= lng <= 180:
            raise ValueError(f"longitude out of range: {lng}")
    lat1, lng1 = map(math.radians, a)
    lat2, lng2 = map(math.radians, b)
    dlat = lat2 - lat1
    dlng = lng2 - lng1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlng / 2) ** 2
    return 2 * 6371.0 * math.asin(min(1.0, math.sqrt(h)))


class Recommender:
    """Candidate generation over the division tree, ranking, and votes."""

    def __init__(
        self,
        divisions: DivisionIndex,
        hospitals: Dict[str, Hospital],
        physicians: Dict[str, Physician],
        vote_log: Optional[Path] = None,
        fallback_k: int = 5,
    ):
        self.divisions = divisions
        self.hospitals = hospitals
        self.physicians = physicians
        self.fallback_k = fallback_k
        self.vote_log = Path(vote_log) if vote_log else None
        self._vote_lock = threading.Lock()
        for h in hospitals.values():
            divisions.get(h.division_code)
        for p in physicians.values():
            if p.work_at not in hospitals:
                raise RecommendError(f"physician {p.iri} works at unknown {p.work_at}")
        if self.vote_log and self.vote_log.exists():
            self._replay_votes()

    def _replay_votes(self) -> None:
        with self.vote_log.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                physician = self.physicians.get(event["physician"])
                if physician is None:
                    continue
                if event["direction"] == "up":
                    physician.thumbs_up += 1
                else:
                    physician.thumbs_down += 1

    def candidates(self, division_code: str) -> List[Physician]:
        """Physicians whose hospital lies in the division's subtree."""
        codes = self.divisions.subtree(division_code)
        hospital_iris = {
            h.iri for h in self.hospitals.values() if h.division_code in codes
        }
        found = [p for p in self.physicians.values() if p.work_at in hospital_iris]
        found.sort(key=lambda p: p.iri)
        return found

    def expand_by_distance(self, division_code: str, k: int) -> List[Physician]:
        """Physicians of the k hospitals nearest to the division centroid.

        Only legal when the division itself has no candidates.
        """
        if k < 1:
            raise RecommendError("k must be >= 1")
        if self.candidates(division_code):
            raise RecommendError(
                f"division {division_code} has candidates; fallback not applicable"
            )
        if not self.hospitals:
            raise RecommendError("no hospitals in the knowledge base")
        division = self.divisions.get(division_code)
        origin = (division.lat, division.lng)
        ordered = sorted(
            self.hospitals.values(),
            key=lambda h: (haversine_km(origin, (h.lat, h.lng)), h.iri.encode("utf-8")),
        )
        nearest = {h.iri for h in ordered[:k]}
        found = [p for p in self.physicians.values() if p.work_at in nearest]
        found.sort(key=lambda p: p.iri)
        return found

    def _rank_key(self, physician: Physician):
        hospital = self.hospitals[physician.work_at]
        return (
            -physician.title_rank,
            -hospital.level_rank,
            -physician.net_thumbs,
            physician.name.encode("utf-8"),
            physician.iri.encode("utf-8"),
        )

    def rank(self, physicians: Sequence[Physician]) -> List[Physician]:
        """Descending by (title, hospital level, net thumbs); ties by name, IRI."""
        return sorted(physicians, key=self._rank_key)

    def recommend(self, division_code: str, k: Optional[int] = None) -> Tuple[List[Physician], bool]:
        """Ranked candidates; falls back to nearest hospitals when empty.

        Returns (physicians, used_fallback).
        """
        found = self.candidates(division_code)
        if found:
            return self.rank(found), False
        fallback = self.expand_by_distance(division_code, k or self.fallback_k)
        return self.rank(fallback), True

    def vote(self, physician_iri: str, direction: str) -> Tuple[int, int]:
        if direction not in ("up", "down"):
            raise RecommendError(f"direction must be 'up' or 'down': {direction}")
        with self._vote_lock:
            physician = self.physicians.get(physician_iri)
            if physician is None:
                raise UnknownPhysicianError(f"unknown physician: {physician_iri}")
            if direction == "up":
                physician.thumbs_up += 1
            else:
                physician.thumbs_down += 1
            if self.vote_log:
                with self.vote_log.open("a", encoding="utf-8") as fh:
                    fh.write(
                        json.dumps({"physician": physician_iri, "direction": direction})
                        + "\n"
                    )
            return physician.thumbs_up, physician.thumbs_down
