/**
 * End-to-end: drives the real HTTP service with a scripted respondent
 * through the same controller the answer buttons invoke.
 */

import { ChildProcess, spawn } from "node:child_process";
import { setTimeout as sleep } from "node:timers/promises";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceError, SessionApi } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import { renderCurve } from "../src/curve.js";
import { Choice, symbolToChoice } from "../src/state.js";
import type { AnswerSymbol, QueryDto } from "../src/types.js";

const PORT = 8300 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

beforeAll(async () => {
  server = spawn("cardinal-scale", ["serve", "--port", String(PORT)], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/sessions/warmup/query`);
      if (res.status === 404) {
        break;
      }
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) {
      throw new Error("service did not come up");
    }
    await sleep(100);
  }
});

afterAll(() => {
  server.kill("SIGTERM");
});

/** Respondent whose private value scale is v(t) = t^2. */
function respond(query: QueryDto): AnswerSymbol {
  const v = (t: number) => t * t;
  const band = 1e-9;
  let d: number;
  if (query.kind === "Binary") {
    d = v(query.prompt_data.left) - v(query.prompt_data.right);
  } else {
    const p = query.prompt_data;
    d = v(p.first_gain) - v(p.first_base) - (v(p.second_gain) - v(p.second_base));
  }
  if (d > band) {
    return ">";
  }
  if (d < -band) {
    return "<";
  }
  return "=";
}

async function driveToCompletion(controller: SessionController): Promise<void> {
  let guard = 2000;
  while (controller.state.phase === "asking" && controller.state.query !== null) {
    if (--guard === 0) {
      throw new Error("session did not converge");
    }
    await controller.answer(symbolToChoice(respond(controller.state.query)));
  }
}

describe("scripted elicitation through the UI controller", () => {
  it("completes and renders exactly the knots the service reports", async () => {
    const api = new SessionApi(BASE);
    const controller = new SessionController(api);
    await controller.start({ lo: 0, hi: 100, tol: 0.0625 });
    expect(controller.state.phase).toBe("asking");
    expect(controller.state.queryBudget).toBeGreaterThan(0);

    await driveToCompletion(controller);

    expect(controller.state.phase).toBe("complete");
    const served = await api.getUtility(controller.state.sessionId!);
    expect(controller.state.knots).toEqual(served.knots);
    expect(controller.state.resolution).toBe(served.resolution);
    expect(served.knots.length).toBe(17);

    const values = served.knots.map(([, u]) => u);
    for (let i = 0; i < 17; i++) {
      expect(values[i]).toBe(i / 16);
    }

    const svg = renderCurve(controller.state.knots);
    expect([...svg.matchAll(/<circle /g)]).toHaveLength(17);
  }, 120_000);

  it("records each button choice as its mapped symbol in the service log", async () => {
    const api = new SessionApi(BASE);
    const controller = new SessionController(api);
    await controller.start({ lo: 0, hi: 100, tol: 0.25 });

    // anchor confirmation: 100 beats 0, so "first larger"
    expect(controller.state.query?.kind).toBe("Binary");
    await controller.answer("first larger");
    expect(controller.state.phase).toBe("asking");

    // probe two more buttons on difference queries
    expect(controller.state.query?.kind).toBe("Difference");
    await controller.answer("second larger");
    const thirdQueryId = controller.state.query!.id;
    await controller.answer("about equal");

    const log = await api.getLog(controller.state.sessionId!);
    const bySymbol = log.entries.map((entry) => entry.answer);
    expect(bySymbol.slice(0, 3)).toEqual([">", "<", "="]);

    // the Equal answer closed that bisection: a fresh query is pending
    expect(controller.state.query!.id).toBeGreaterThan(thirdQueryId);
  });

  it("surfaces a contradiction as a failed session with the reason", async () => {
    const api = new SessionApi(BASE);
    const controller = new SessionController(api);
    await controller.start({ lo: 0, hi: 100, tol: 0.25 });

    // deny the anchor order: 0 in lieu of 100 cannot be an improvement
    await controller.answer("second larger");

    expect(controller.state.phase).toBe("failed");
    expect(controller.state.failure?.error).toBe("AnchorsNotStrict");
    expect(controller.state.failure?.conflicting_query_ids).toEqual([1]);
    expect(controller.state.banner).toContain("Session failed");

    const log = await api.getLog(controller.state.sessionId!);
    expect(log.status).toBe("Failed");
    expect(log.failure?.error).toBe("AnchorsNotStrict");
  });

  it("turns a service-rejected config into an error banner", async () => {
    const api = new SessionApi(BASE);
    const controller = new SessionController(api);
    await controller.start({ lo: 0, hi: 100, a0: 200 });
    expect(controller.state.phase).toBe("error");
    expect(controller.state.banner).toContain("BadConfig");
  });

  it("shows an unreachable-service banner that offers a retry", async () => {
    const api = new SessionApi("http://127.0.0.1:1");
    const controller = new SessionController(api);
    await controller.start({ lo: 0, hi: 100 });
    expect(controller.state.phase).toBe("error");
    expect(controller.state.banner).toContain("unreachable");
    // retry with no session reachable resets to the idle form
    await controller.retry();
    expect(controller.state.phase).toBe("idle");
  });

  it("reports a budget that grows as the tolerance tightens", async () => {
    const api = new SessionApi(BASE);
    const coarse = await api.createSession({ lo: 0, hi: 100, tol: 0.25 });
    const fine = await api.createSession({ lo: 0, hi: 100, tol: 0.015625 });
    expect(fine.query_budget).toBeGreaterThan(coarse.query_budget);
  });

  it("resumes a half-answered session from its id", async () => {
    const api = new SessionApi(BASE);
    const first = new SessionController(api);
    await first.start({ lo: 0, hi: 100, tol: 0.0625 });
    for (const choice of ["first larger"] as Choice[]) {
      await first.answer(choice);
    }
    for (let i = 0; i < 4; i++) {
      await first.answer(symbolToChoice(respond(first.state.query!)));
    }
    const sessionId = first.state.sessionId!;
    const pendingId = first.state.query!.id;

    const second = new SessionController(api);
    expect(await second.resume(sessionId)).toBe(true);
    expect(second.state.phase).toBe("asking");
    expect(second.state.sessionId).toBe(sessionId);
    expect(second.state.history).toHaveLength(5);
    expect(second.state.query!.id).toBe(pendingId);

    const third = new SessionController(api);
    expect(await third.resume("nosuchsession")).toBe(false);
  });
});
