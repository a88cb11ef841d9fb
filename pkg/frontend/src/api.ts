/** Typed client for the backend JSON API. */

import { buildSearchUrl, UiSearchState } from "./state.js";

export interface SearchResult {
  iri: string;
  title: string | null;
  description: string | null;
  publisher: string | null;
  catalog: string | null;
  license: string | null;
  quality: number | null;
  point: [number, number] | null;
}

export interface SearchResponse {
  total: number;
  page: number;
  size: number;
  results: SearchResult[];
  facets: Record<string, Record<string, number>>;
}

export interface QualityMeasurement {
  metric: string;
  score: number;
}

export interface QualityResponse {
  dataset: string;
  aggregate: number | null;
  measurements: QualityMeasurement[];
}

export interface LicenseConflict {
  kind: string;
  details: string;
}

export interface LicenseVerdict {
  compatible: boolean;
  conflicts: LicenseConflict[];
  candidates: { id: string; name: string }[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let code = "error";
    let message = response.statusText;
    try {
      const body = (await response.json()) as { code?: string; message?: string };
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(response.status, code, message);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: typeof fetch = fetch,
  ) {}

  search(state: UiSearchState, signal?: AbortSignal): Promise<SearchResponse> {
    const url = this.baseUrl + buildSearchUrl(state);
    return this.fetchImpl(url, { signal }).then((r) => asJson<SearchResponse>(r));
  }

  dataset(iri: string): Promise<SearchResult & Record<string, unknown>> {
    const url = `${this.baseUrl}/api/datasets/${encodeURIComponent(iri)}`;
    return this.fetchImpl(url).then((r) => asJson(r));
  }

  quality(iri: string): Promise<QualityResponse> {
    const url = `${this.baseUrl}/api/quality/${encodeURIComponent(iri)}`;
    return this.fetchImpl(url).then((r) => asJson<QualityResponse>(r));
  }

  facets(): Promise<Record<string, Record<string, number>>> {
    return this.fetchImpl(`${this.baseUrl}/api/facets`).then((r) => asJson(r));
  }

  checkLicenses(licenses: string[]): Promise<LicenseVerdict> {
    return this.fetchImpl(`${this.baseUrl}/api/licenses/check`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ licenses }),
    }).then((r) => asJson<LicenseVerdict>(r));
  }
}
