"""Read-only HTTP/JSON API over the index, quality results and license checks.

All handlers read one immutable state snapshot per request; swapping in a
new snapshot (after a reindex) is a single attribute assignment and never
affects requests already in flight.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Optional
from urllib.parse import unquote

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .licenses import LicenseDb, check_compatibility, load_license_db, relicensing_candidates
from .quality import parse_measurements
from .rdf import Graph, Iri
from .search import FACET_FIELDS, DocEntry, InvertedIndex, SearchQuery, SynonymTable


@dataclass
class ServiceState:
    index: InvertedIndex
    synonyms: SynonymTable = dataclass_field(default_factory=SynonymTable)
    license_db: LicenseDb = dataclass_field(default_factory=load_license_db)
    quality_graph: Graph = dataclass_field(default_factory=Graph)

    def measurements_for(self, dataset: Iri) -> list[tuple[str, int]]:
        return parse_measurements(self.quality_graph, dataset)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _bad_request(message: str) -> JSONResponse:
    return _error(400, "bad_request", message)


def _doc_json(entry: DocEntry) -> dict:
    def preferred(pairs):
        for lang in ("de", "en"):
            for l, text in pairs:
                if l == lang:
                    return text
        return pairs[0][1] if pairs else None

    return {
        "iri": entry.dataset.value,
        "title": preferred(entry.titles),
        "description": preferred(entry.descriptions),
        "publisher": entry.publisher,
        "catalog": entry.catalog.value if entry.catalog else None,
        "license": entry.license.value if entry.license else None,
        "quality": entry.quality,
        "point": list(entry.point) if entry.point else None,
    }


def _doc_json_full(entry: DocEntry) -> dict:
    out = _doc_json(entry)
    out["titles"] = [[lang, text] for lang, text in entry.titles]
    out["descriptions"] = [[lang, text] for lang, text in entry.descriptions]
    out["keywords"] = [[lang, text] for lang, text in entry.keywords]
    out["categories"] = [c.value for c in entry.categories]
    return out


def _parse_search_params(request: Request) -> SearchQuery:
    params = request.query_params

    def parse_int(name: str, default: int) -> int:
        raw = params.get(name)
        if raw is None or raw == "":
            return default
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{name} must be an integer")

    facets: dict[str, tuple[str, ...]] = {}
    for facet in FACET_FIELDS:
        values = tuple(v for v in params.getlist(facet) if v)
        if values:
            facets[facet] = values

    facet_mode: dict[str, str] = {}
    for facet in FACET_FIELDS:
        mode = params.get(f"facet_mode.{facet}")
        if mode:
            facet_mode[facet] = mode.lower()

    bbox = None
    raw_bbox = params.get("bbox")
    if raw_bbox:
        parts = raw_bbox.split(",")
        if len(parts) != 4:
            raise ValueError("bbox must be swLat,swLon,neLat,neLon")
        try:
            sw_lat, sw_lon, ne_lat, ne_lon = (float(p) for p in parts)
        except ValueError:
            raise ValueError("bbox coordinates must be numbers")
        bbox = ((sw_lat, sw_lon), (ne_lat, ne_lon))

    sort = params.get("sort", "relevance") or "relevance"
    origin = None
    if sort == "distance":
        lat_raw, lon_raw = params.get("lat"), params.get("lon")
        if lat_raw is None or lon_raw is None:
            raise ValueError("sort=distance needs lat and lon")
        try:
            origin = (float(lat_raw), float(lon_raw))
        except ValueError:
            raise ValueError("lat/lon must be numbers")

    synonyms_raw = (params.get("synonyms") or "false").lower()
    if synonyms_raw not in ("true", "false"):
        raise ValueError("synonyms must be true or false")

    return SearchQuery(
        text=params.get("q", "") or "",
        facets=facets,
        facet_mode=facet_mode,
        bbox=bbox,
        sort=sort,
        origin=origin,
        synonyms=synonyms_raw == "true",
        page=parse_int("page", 1),
        size=parse_int("size", 10),
    )


def create_app(state: ServiceState, cors_origin: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="dcatq", docs_url=None, redoc_url=None)
    app.state.service = state

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin] if cors_origin != "*" else ["*"],
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.get("/healthz")
    def healthz(request: Request):
        service: ServiceState = request.app.state.service
        return {"status": "ok", "documents": len(service.index)}

    @app.get("/api/search")
    def search(request: Request):
        service: ServiceState = request.app.state.service
        try:
            query = _parse_search_params(request)
        except ValueError as exc:
            return _bad_request(str(exc))
        page = service.index.search(query, synonym_table=service.synonyms)
        return {
            "total": page.total,
            "page": page.page,
            "size": page.size,
            "results": [_doc_json(entry) for entry, _ in page.results],
            "facets": page.facets,
        }

    @app.get("/api/facets")
    def facets(request: Request):
        service: ServiceState = request.app.state.service
        return {
            facet: {value: len(ids) for value, ids in sorted(table.items())}
            for facet, table in service.index.facet_tables.items()
        }

    @app.get("/api/datasets/{iri:path}")
    def dataset(iri: str, request: Request):
        service: ServiceState = request.app.state.service
        decoded = unquote(iri)
        doc_id = service.index.doc_ids.get(decoded)
        if doc_id is None:
            return _error(404, "not_found", f"no such dataset: {decoded}")
        return _doc_json_full(service.index.docs[doc_id])

    @app.get("/api/quality/{iri:path}")
    def quality(iri: str, request: Request):
        service: ServiceState = request.app.state.service
        decoded = unquote(iri)
        doc_id = service.index.doc_ids.get(decoded)
        if doc_id is None:
            return _error(404, "not_found", f"no such dataset: {decoded}")
        entry = service.index.docs[doc_id]
        measurements = service.measurements_for(Iri(decoded))
        return {
            "dataset": decoded,
            "aggregate": entry.quality,
            "measurements": [{"metric": metric, "score": score} for metric, score in measurements],
        }

    @app.post("/api/licenses/check")
    async def license_check(request: Request):
        service: ServiceState = request.app.state.service
        try:
            body = await request.json()
        except Exception:
            return _bad_request("request body must be JSON")
        if not isinstance(body, dict) or not isinstance(body.get("licenses"), list):
            return _bad_request("body must be {\"licenses\": [iri, ...]}")
        raw = [value for value in body["licenses"] if isinstance(value, str) and value.strip()]
        if not raw:
            return _bad_request("licenses must not be empty")
        specs = []
        for value in raw:
            try:
                specs.append(service.license_db.resolve(Iri(value.strip())))
            except ValueError:
                return _bad_request(f"not an IRI: {value!r}")
        verdict = check_compatibility(specs)
        candidates = relicensing_candidates(specs, service.license_db)
        return {
            "compatible": verdict.compatible,
            "conflicts": [{"kind": c.kind, "details": c.details} for c in verdict.conflicts],
            "candidates": [{"id": c.id.value, "name": c.name} for c in candidates],
        }

    return app
