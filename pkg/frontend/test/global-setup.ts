import { spawn, type ChildProcess } from "node:child_process";
import type { GlobalSetupContext } from "vitest/node";

declare module "vitest" {
  export interface ProvidedContext {
    serviceBase: string;
  }
}

/** Spawn one session service for the whole run; tests get its base URL. */
export default async function setup({ provide }: GlobalSetupContext) {
  const port = 8700 + (process.pid % 900);
  const base = `http://127.0.0.1:${port}`;
  const child: ChildProcess = spawn("quiztree", ["serve", "--port", String(port)], {
    stdio: ["ignore", "ignore", "pipe"],
  });
  let stderr = "";
  child.stderr?.on("data", (chunk: Buffer) => {
    stderr += chunk.toString();
  });
  const died = new Promise<never>((_, reject) => {
    child.on("error", (err) =>
      reject(new Error(`cannot launch quiztree serve (${err.message}); install the Python package first`)),
    );
    child.on("exit", (code) =>
      reject(new Error(`quiztree serve exited with ${code}:\n${stderr}`)),
    );
  });

  const ready = (async () => {
    const deadline = Date.now() + 30000;
    for (;;) {
      try {
        const response = await fetch(`${base}/api/meta/strategies`);
        if (response.ok) return;
      } catch {
        // not listening yet
      }
      if (Date.now() > deadline) {
        throw new Error(`service did not come up on ${base}:\n${stderr}`);
      }
      await new Promise((resolve) => setTimeout(resolve, 150));
    }
  })();
  await Promise.race([ready, died]);

  provide("serviceBase", base);
  return () => {
    child.kill("SIGTERM");
  };
}
