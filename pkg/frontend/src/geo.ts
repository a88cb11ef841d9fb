/** Device geolocation via the W3C Geolocation API, with graceful fallbacks. */

export type GeolocationOutcome =
  | { status: "granted"; lat: number; lon: number }
  | { status: "denied" }
  | { status: "unavailable" };

/** True when the geolocation control should be offered at all. */
export function geolocationAvailable(
  nav: Navigator | undefined = typeof navigator === "undefined" ? undefined : navigator,
  secureContext: boolean = typeof window === "undefined" ? false : window.isSecureContext,
): boolean {
  return Boolean(secureContext && nav && "geolocation" in nav);
}

/**
 * Ask the device for its position. Denial resolves to "denied" (the UI
 * falls back to manual coordinate inputs); missing API or an insecure
 * context resolve to "unavailable" (the control is hidden).
 */
export function requestGeolocation(
  nav: Navigator | undefined = typeof navigator === "undefined" ? undefined : navigator,
  secureContext: boolean = typeof window === "undefined" ? false : window.isSecureContext,
): Promise<GeolocationOutcome> {
  if (!geolocationAvailable(nav, secureContext)) {
    return Promise.resolve({ status: "unavailable" });
  }
  return new Promise((resolve) => {
    nav!.geolocation.getCurrentPosition(
      (position) =>
        resolve({
          status: "granted",
          lat: position.coords.latitude,
          lon: position.coords.longitude,
        }),
      () => resolve({ status: "denied" }),
      { timeout: 10_000 },
    );
  });
}
