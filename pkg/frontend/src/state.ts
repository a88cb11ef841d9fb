/**
 * Search state and its URL (de)serialization.
 *
 * The query string doubles as the shareable app state and as the backend
 * request: parameters match the /api/search contract exactly. Defaults are
 * not serialized, except page and size which are always present.
 */

export const FACET_FIELDS = ["category", "publisher", "catalog", "license"] as const;
export type FacetField = (typeof FACET_FIELDS)[number];
export type FacetMode = "and" | "or";
export type SortMode = "relevance" | "distance";

export interface BBox {
  swLat: number;
  swLon: number;
  neLat: number;
  neLon: number;
}

export interface UiSearchState {
  query: string;
  facets: Record<FacetField, string[]>;
  facetMode: Record<FacetField, FacetMode>;
  bbox: BBox | null;
  sort: SortMode;
  origin: { lat: number; lon: number } | null;
  synonyms: boolean;
  page: number;
  size: number;
}

export function defaultState(): UiSearchState {
  return {
    query: "",
    facets: { category: [], publisher: [], catalog: [], license: [] },
    facetMode: { category: "or", publisher: "or", catalog: "or", license: "or" },
    bbox: null,
    sort: "relevance",
    origin: null,
    synonyms: false,
    page: 1,
    size: 10,
  };
}

/** Relative search URL for a state; parameter names mirror the API. */
export function buildSearchUrl(state: UiSearchState, path = "/api/search"): string {
  const params = new URLSearchParams();
  if (state.query !== "") {
    params.set("q", state.query);
  }
  for (const field of FACET_FIELDS) {
    for (const value of state.facets[field]) {
      params.append(field, value);
    }
  }
  for (const field of FACET_FIELDS) {
    if (state.facetMode[field] !== "or") {
      params.set(`facet_mode.${field}`, state.facetMode[field]);
    }
  }
  if (state.bbox !== null) {
    const { swLat, swLon, neLat, neLon } = state.bbox;
    params.set("bbox", [swLat, swLon, neLat, neLon].map(String).join(","));
  }
  if (state.sort !== "relevance") {
    params.set("sort", state.sort);
  }
  if (state.origin !== null && state.sort === "distance") {
    params.set("lat", String(state.origin.lat));
    params.set("lon", String(state.origin.lon));
  }
  if (state.synonyms) {
    params.set("synonyms", "true");
  }
  params.set("page", String(state.page));
  params.set("size", String(state.size));
  return `${path}?${params.toString()}`;
}

/** Inverse of buildSearchUrl over its serializable range. */
export function parseSearchUrl(url: string): UiSearchState {
  const queryString = url.includes("?") ? url.slice(url.indexOf("?") + 1) : url;
  const params = new URLSearchParams(queryString);
  const state = defaultState();

  state.query = params.get("q") ?? "";
  for (const field of FACET_FIELDS) {
    state.facets[field] = params.getAll(field).filter((v) => v !== "");
    const mode = params.get(`facet_mode.${field}`);
    if (mode === "and") {
      state.facetMode[field] = "and";
    }
  }
  const bbox = params.get("bbox");
  if (bbox !== null) {
    const parts = bbox.split(",").map(Number);
    if (parts.length === 4 && parts.every((n) => Number.isFinite(n))) {
      state.bbox = { swLat: parts[0], swLon: parts[1], neLat: parts[2], neLon: parts[3] };
    }
  }
  if (params.get("sort") === "distance") {
    state.sort = "distance";
    const lat = Number(params.get("lat"));
    const lon = Number(params.get("lon"));
    if (Number.isFinite(lat) && Number.isFinite(lon)) {
      state.origin = { lat, lon };
    }
  }
  state.synonyms = params.get("synonyms") === "true";
  const page = Number(params.get("page") ?? "1");
  const size = Number(params.get("size") ?? "10");
  state.page = Number.isInteger(page) && page >= 1 ? page : 1;
  state.size = Number.isInteger(size) && size >= 1 && size <= 100 ? size : 10;
  return state;
}

export function statesEqual(a: UiSearchState, b: UiSearchState): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}
