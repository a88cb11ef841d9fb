import { describe, expect, it } from "vitest";

import { geolocationAvailable, requestGeolocation } from "../src/geo.js";

function navigatorWith(geolocation: Partial<Geolocation> | undefined): Navigator {
  return (geolocation ? { geolocation } : {}) as unknown as Navigator;
}

describe("geolocation wrapper", () => {
  it("reports granted coordinates", async () => {
    const nav = navigatorWith({
      getCurrentPosition: (success) =>
        success({
          coords: { latitude: 51.7, longitude: 8.7 },
        } as GeolocationPosition),
    });
    const outcome = await requestGeolocation(nav, true);
    expect(outcome).toEqual({ status: "granted", lat: 51.7, lon: 8.7 });
  });

  it("resolves to denied on permission errors (manual entry fallback)", async () => {
    const nav = navigatorWith({
      getCurrentPosition: (_success, error) =>
        error!({ code: 1, message: "denied" } as GeolocationPositionError),
    });
    const outcome = await requestGeolocation(nav, true);
    expect(outcome).toEqual({ status: "denied" });
  });

  it("is unavailable without a secure context", async () => {
    const nav = navigatorWith({ getCurrentPosition: () => undefined });
    expect(geolocationAvailable(nav, false)).toBe(false);
    expect(await requestGeolocation(nav, false)).toEqual({ status: "unavailable" });
  });

  it("is unavailable without the API", async () => {
    expect(geolocationAvailable(navigatorWith(undefined), true)).toBe(false);
    expect(await requestGeolocation(navigatorWith(undefined), true)).toEqual({
      status: "unavailable",
    });
  });
});
