/** Spawns the real backend (API server) for integration tests. */

import { ChildProcess, execFileSync, spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface Backend {
  baseUrl: string;
  stop: () => void;
}

const HERE = new URL(".", import.meta.url).pathname;

async function waitForHealth(baseUrl: string, child: ChildProcess, timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`backend exited early with code ${child.exitCode}`);
    }
    try {
      const response = await fetch(`${baseUrl}/healthz`);
      if (response.ok) {
        return;
      }
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`backend did not become healthy: ${lastError}`);
}

export async function startBackend(): Promise<Backend> {
  const workdir = mkdtempSync(join(tmpdir(), "dcatq-ui-test-"));
  execFileSync("python3", [join(HERE, "prepare_backend.py"), workdir], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const port = 18100 + (process.pid % 700);
  const child = spawn(
    "python3",
    [
      "-m",
      "dcatq.cli",
      "serve",
      "--index",
      join(workdir, "index.bin"),
      "--host",
      "127.0.0.1",
      "--port",
      String(port),
      "--cors-origin",
      "*",
    ],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  try {
    await waitForHealth(baseUrl, child);
  } catch (error) {
    child.kill("SIGKILL");
    throw error;
  }
  return {
    baseUrl,
    stop: () => {
      child.kill("SIGTERM");
    },
  };
}
