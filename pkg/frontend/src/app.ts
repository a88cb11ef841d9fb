/**
 * Single-page search client. State lives in the URL (shareable searches);
 * every change re-renders from a fresh API response, so displayed counts
 * are always the backend's counts.
 */

import { ApiClient, SearchResponse, SearchResult } from "./api.js";
import { checkSelectedLicenses, verdictSummary } from "./assistant.js";
import { geolocationAvailable, requestGeolocation } from "./geo.js";
import { starString } from "./stars.js";
import {
  FACET_FIELDS,
  FacetField,
  UiSearchState,
  buildSearchUrl,
  defaultState,
  parseSearchUrl,
} from "./state.js";

const FACET_LABELS: Record<FacetField, string> = {
  category: "Categories",
  publisher: "Publishers",
  catalog: "Catalogs",
  license: "Licenses",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

export class App {
  private state: UiSearchState;
  private inflight: AbortController | null = null;
  private selectedLicenses = new Set<string>();

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {
    this.state = parseSearchUrl(window.location.search);
  }

  async start(): Promise<void> {
    this.renderSkeleton();
    await this.refresh();
  }

  private setState(patch: Partial<UiSearchState>, resetPage = true): void {
    this.state = { ...this.state, ...patch };
    if (resetPage) {
      this.state.page = 1;
    }
    history.replaceState(null, "", buildSearchUrl(this.state, window.location.pathname));
    void this.refresh();
  }

  private async refresh(): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const status = this.root.querySelector("#status")!;
    status.textContent = "Searching…";
    try {
      const response = await this.api.search(this.state, controller.signal);
      if (controller.signal.aborted) {
        return;
      }
      this.renderResults(response);
      this.renderFacets(response);
      status.textContent = `${response.total} datasets`;
    } catch (error) {
      if ((error as Error).name === "AbortError") {
        return;
      }
      status.textContent = `Search failed: ${(error as Error).message}`;
    }
  }

  // --- rendering -------------------------------------------------------------

  private renderSkeleton(): void {
    const geoControls = geolocationAvailable()
      ? [el("button", { id: "geo-button", type: "button" }, "Use my location")]
      : [];
    this.root.replaceChildren(
      el(
        "header",
        {},
        el("h1", {}, "Open data search"),
        el(
          "form",
          { id: "search-form", role: "search" },
          el("input", {
            id: "query",
            type: "search",
            placeholder: "Search titles, descriptions, keywords…",
            value: this.state.query,
          }),
          el("label", { class: "toggle" }, this.checkbox("synonyms", this.state.synonyms), "Synonyms"),
          el("button", { type: "submit" }, "Search"),
        ),
        el("p", { id: "status" }),
      ),
      el(
        "div",
        { class: "layout" },
        el(
          "aside",
          { id: "sidebar" },
          el("section", { id: "facets" }),
          this.bboxSection(),
          this.sortSection(geoControls),
          this.licenseSection(),
        ),
        el("main", {}, el("ol", { id: "results" }), this.pagerSection()),
      ),
    );

    const form = this.root.querySelector<HTMLFormElement>("#search-form")!;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const query = this.root.querySelector<HTMLInputElement>("#query")!.value;
      this.setState({ query });
    });
    this.root.querySelector<HTMLInputElement>("#synonyms")!.addEventListener("change", (event) => {
      this.setState({ synonyms: (event.target as HTMLInputElement).checked });
    });
    const geoButton = this.root.querySelector<HTMLButtonElement>("#geo-button");
    geoButton?.addEventListener("click", async () => {
      const outcome = await requestGeolocation();
      const hint = this.root.querySelector("#geo-hint")!;
      if (outcome.status === "granted") {
        this.fillOrigin(outcome.lat, outcome.lon);
        hint.textContent = "";
        this.setState({ sort: "distance", origin: { lat: outcome.lat, lon: outcome.lon } });
      } else {
        hint.textContent = "Location not available - enter coordinates manually.";
      }
    });
  }

  private checkbox(id: string, checked: boolean): HTMLInputElement {
    const input = el("input", { id, type: "checkbox" });
    input.checked = checked;
    return input;
  }

  private bboxSection(): HTMLElement {
    const fields: [keyof NonNullable<UiSearchState["bbox"]>, string][] = [
      ["swLat", "SW lat"],
      ["swLon", "SW lon"],
      ["neLat", "NE lat"],
      ["neLon", "NE lon"],
    ];
    const inputs = fields.map(([key, label]) =>
      el(
        "label",
        {},
        label,
        el("input", {
          type: "number",
          step: "any",
          "data-bbox": key,
          value: this.state.bbox ? String(this.state.bbox[key]) : "",
        }),
      ),
    );
    const apply = el("button", { type: "button" }, "Apply");
    apply.addEventListener("click", () => {
      const values: Record<string, number> = {};
      let complete = true;
      this.root.querySelectorAll<HTMLInputElement>("input[data-bbox]").forEach((input) => {
        const parsed = parseFloat(input.value);
        if (Number.isFinite(parsed)) {
          values[input.dataset.bbox!] = parsed;
        } else {
          complete = false;
        }
      });
      this.setState({
        bbox: complete
          ? { swLat: values.swLat, swLon: values.swLon, neLat: values.neLat, neLon: values.neLon }
          : null,
      });
    });
    const clear = el("button", { type: "button" }, "Clear");
    clear.addEventListener("click", () => {
      this.root.querySelectorAll<HTMLInputElement>("input[data-bbox]").forEach((i) => (i.value = ""));
      this.setState({ bbox: null });
    });
    return el("section", { class: "panel" }, el("h2", {}, "Bounding box"), ...inputs, el("div", {}, apply, clear));
  }

  private sortSection(geoControls: HTMLElement[]): HTMLElement {
    const select = el("select", { id: "sort" });
    for (const value of ["relevance", "distance"]) {
      const option = el("option", { value }, value);
      if (this.state.sort === value) {
        option.setAttribute("selected", "selected");
      }
      select.append(option);
    }
    const lat = el("input", { id: "origin-lat", type: "number", step: "any", placeholder: "lat" });
    const lon = el("input", { id: "origin-lon", type: "number", step: "any", placeholder: "lon" });
    if (this.state.origin) {
      lat.value = String(this.state.origin.lat);
      lon.value = String(this.state.origin.lon);
    }
    const apply = () => {
      const sort = (select as HTMLSelectElement).value as UiSearchState["sort"];
      const latV = parseFloat(lat.value);
      const lonV = parseFloat(lon.value);
      const origin = Number.isFinite(latV) && Number.isFinite(lonV) ? { lat: latV, lon: lonV } : null;
      if (sort === "distance" && origin === null) {
        this.root.querySelector("#geo-hint")!.textContent = "Distance sort needs coordinates.";
        return;
      }
      this.setState({ sort, origin });
    };
    select.addEventListener("change", apply);
    lat.addEventListener("change", apply);
    lon.addEventListener("change", apply);
    return el(
      "section",
      { class: "panel" },
      el("h2", {}, "Sort"),
      select,
      el("div", {}, lat, lon, ...geoControls),
      el("p", { id: "geo-hint", class: "hint" }),
    );
  }

  private fillOrigin(latValue: number, lonValue: number): void {
    this.root.querySelector<HTMLInputElement>("#origin-lat")!.value = String(latValue);
    this.root.querySelector<HTMLInputElement>("#origin-lon")!.value = String(lonValue);
  }

  private licenseSection(): HTMLElement {
    const button = el("button", { id: "license-check", type: "button", disabled: "disabled" }, "Check compatibility");
    const output = el("div", { id: "license-verdict" });
    button.addEventListener("click", () => void this.runAssistant());
    return el(
      "section",
      { class: "panel" },
      el("h2", {}, "License assistant"),
      el("p", { class: "hint" }, "Pick licenses from the facet list, then check whether their datasets can be combined."),
      el("ul", { id: "license-selection" }),
      button,
      output,
    );
  }

  private async runAssistant(): Promise<void> {
    const output = this.root.querySelector("#license-verdict")!;
    output.replaceChildren(el("p", {}, "Checking…"));
    const result = await checkSelectedLicenses(this.api, [...this.selectedLicenses].sort());
    if (result.status === "ok") {
      const lines = verdictSummary(result.verdict);
      output.replaceChildren(
        el("p", { class: result.verdict.compatible ? "ok" : "bad" }, lines[0]),
        ...lines.slice(1).map((line) => el("p", {}, line)),
      );
    } else if (result.status === "network_error") {
      const retry = el("button", { type: "button" }, "Retry");
      retry.addEventListener("click", () => void this.runAssistant());
      output.replaceChildren(el("p", { class: "bad" }, `Request failed: ${result.message} `, retry));
    } else {
      output.replaceChildren(el("p", { class: "bad" }, result.message));
    }
  }

  private renderLicenseSelection(): void {
    const list = this.root.querySelector("#license-selection")!;
    list.replaceChildren(
      ...[...this.selectedLicenses].sort().map((iri) => el("li", {}, iri)),
    );
    const button = this.root.querySelector<HTMLButtonElement>("#license-check")!;
    button.disabled = this.selectedLicenses.size === 0;
  }

  private renderResults(response: SearchResponse): void {
    const list = this.root.querySelector("#results")!;
    list.replaceChildren(...response.results.map((result) => this.resultItem(result)));
    const pager = this.root.querySelector("#pager")!;
    const lastPage = Math.max(1, Math.ceil(response.total / response.size));
    pager.querySelector("#page-label")!.textContent = `page ${response.page} / ${lastPage}`;
    (pager.querySelector("#prev") as HTMLButtonElement).disabled = response.page <= 1;
    (pager.querySelector("#next") as HTMLButtonElement).disabled = response.page >= lastPage;
  }

  private resultItem(result: SearchResult): HTMLElement {
    const quality = el("button", { class: "stars", type: "button", title: "show quality details" }, starString(result.quality));
    const details = el("div", { class: "quality-details" });
    quality.addEventListener("click", async () => {
      if (details.childElementCount > 0) {
        details.replaceChildren();
        return;
      }
      try {
        const data = await this.api.quality(result.iri);
        const table = el(
          "table",
          {},
          ...data.measurements.map((m) =>
            el("tr", {}, el("td", {}, m.metric), el("td", {}, String(m.score))),
          ),
        );
        details.replaceChildren(
          data.measurements.length > 0 ? table : el("p", {}, "No measurements recorded."),
        );
      } catch (error) {
        details.replaceChildren(el("p", {}, `Could not load details: ${(error as Error).message}`));
      }
    });
    return el(
      "li",
      { class: "result" },
      el("h3", {}, result.title ?? result.iri),
      el("p", {}, result.description ?? ""),
      el(
        "p",
        { class: "meta" },
        [result.publisher, result.license, result.point ? `(${result.point[0].toFixed(2)}, ${result.point[1].toFixed(2)})` : null]
          .filter(Boolean)
          .join(" · "),
      ),
      quality,
      details,
    );
  }

  private renderFacets(response: SearchResponse): void {
    const container = this.root.querySelector("#facets")!;
    container.replaceChildren(
      ...FACET_FIELDS.map((field) => this.facetBlock(field, response.facets[field] ?? {})),
    );
    this.renderLicenseSelection();
  }

  private facetBlock(field: FacetField, counts: Record<string, number>): HTMLElement {
    const values = Object.keys(counts).sort();
    const selected = new Set(this.state.facets[field]);
    const toggle = el("button", { type: "button", class: "mode" }, this.state.facetMode[field].toUpperCase());
    toggle.addEventListener("click", () => {
      const mode = this.state.facetMode[field] === "or" ? "and" : "or";
      this.setState({ facetMode: { ...this.state.facetMode, [field]: mode } });
    });
    const items = values.map((value) => {
      const input = this.checkbox(`f-${field}-${value}`, selected.has(value));
      input.addEventListener("change", () => {
        const next = new Set(this.state.facets[field]);
        if (input.checked) {
          next.add(value);
        } else {
          next.delete(value);
        }
        if (field === "license") {
          if (input.checked) {
            this.selectedLicenses.add(value);
          } else {
            this.selectedLicenses.delete(value);
          }
        }
        this.setState({ facets: { ...this.state.facets, [field]: [...next].sort() } });
      });
      return el("li", {}, el("label", {}, input, ` ${value} (${counts[value]})`));
    });
    return el(
      "section",
      { class: "facet" },
      el("h2", {}, FACET_LABELS[field], " ", toggle),
      el("ul", {}, ...items),
    );
  }

  private pagerSection(): HTMLElement {
    const prev = el("button", { id: "prev", type: "button" }, "‹ previous");
    const next = el("button", { id: "next", type: "button" }, "next ›");
    prev.addEventListener("click", () => this.setState({ page: Math.max(1, this.state.page - 1) }, false));
    next.addEventListener("click", () => this.setState({ page: this.state.page + 1 }, false));
    return el("nav", { id: "pager" }, prev, el("span", { id: "page-label" }), next);
  }
}

export function mount(): void {
  const root = document.getElementById("app");
  if (root) {
    const api = new ApiClient((window as unknown as { DCATQ_API_BASE?: string }).DCATQ_API_BASE ?? "");
    void new App(root, api).start();
  }
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  mount();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", mount);
}
