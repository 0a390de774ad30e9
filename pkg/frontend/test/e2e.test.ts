// Full-stack flow: a real game service process, the real DOM app, real HTTP.
// The docblock below pins the DOM origin to the spawned server so
// happy-dom's same-origin policy lets the requests through.

// @vitest-environment happy-dom
// @vitest-environment-options { "url": "http://127.0.0.1:18731" }

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App, type AppElements } from "../src/app.js";

const PORT = 18731;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function serverReady(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const res = await fetch(`${BASE}/api/instances`);
      if (res.ok) return;
    } catch {
      // not yet listening
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("game service did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "tokensat", "serve", "--port", String(PORT)], {
    cwd: "..",
    env: { ...process.env, PYTHONPATH: "src" },
    stdio: "ignore",
  });
  await serverReady();
});

afterAll(() => {
  server.kill();
});

function mountDom(): AppElements {
  document.body.innerHTML = `
    <select id="instance-select"></select>
    <label><input type="radio" name="mode" value="original" checked></label>
    <label><input type="radio" name="mode" value="variant"></label>
    <button id="new-game"></button>
    <button id="hint"></button>
    <button id="undo"></button>
    <span id="hint-message"></span>
    <main id="board"></main>
  `;
  return {
    board: document.querySelector("#board")!,
    instanceSelect: document.querySelector("#instance-select")!,
    modeInputs: Array.from(document.querySelectorAll("input[name=mode]")),
    newGameButton: document.querySelector("#new-game")!,
    hintButton: document.querySelector("#hint")!,
    undoButton: document.querySelector("#undo")!,
    hintMessage: document.querySelector("#hint-message")!,
  };
}

async function until(check: () => boolean, what: string): Promise<void> {
  for (let i = 0; i < 200; i += 1) {
    if (check()) return;
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

function token(els: AppElements, box: number, color: number, shape: string): HTMLButtonElement {
  const el = els.board.querySelector<HTMLButtonElement>(
    `.token[data-box="${box}"][data-color="${color}"][data-shape="${shape}"]`,
  );
  if (!el) throw new Error(`no ${shape} token of color ${color} in box ${box}`);
  return el;
}

describe("playing through the real service", () => {
  let els: AppElements;
  let app: App;

  beforeEach(async () => {
    els = mountDom();
    app = new App(document, els, new ApiClient(BASE));
    await app.init();
    await until(() => els.board.querySelectorAll(".token").length > 0, "initial board");
  });

  it("wins the tutorial board in original mode through four confirmed clicks", async () => {
    expect(els.board.querySelectorAll(".box").length).toBe(7);
    expect(els.board.querySelectorAll(".token").length).toBe(18);

    const winningClicks: Array<[number, number, "square" | "round"]> = [
      [1, 1, "round"], // remove round tokens of color 1
      [2, 2, "round"],
      [4, 3, "square"],
      [5, 4, "round"],
    ];
    for (const [box, color, shape] of winningClicks) {
      token(els, box, color, shape).click();
      await until(
        () => els.board.querySelector("[data-action=confirm-yes]") !== null,
        "confirm chip",
      );
      els.board.querySelector<HTMLButtonElement>("[data-action=confirm-yes]")!.click();
      await until(
        () => !app.isPending() && els.board.querySelector(".confirm-chip") === null,
        "move applied",
      );
    }
    await until(() => els.board.querySelector(".status-won") !== null, "win banner");
    expect(app.currentSnapshot()?.status).toBe("won");
  });

  it("wins the tutorial board in variant mode by clicking down to one token per box", async () => {
    els.modeInputs.find((i) => i.value === "variant")!.dispatchEvent(new Event("change"));
    await until(
      () => app.currentSnapshot()?.mode === "variant" && !app.isPending(),
      "variant session",
    );

    // Keep square 1 / square 2 / round 3 / square 4 everywhere.
    const removals: Array<[number, number, "square" | "round"]> = [
      [0, 2, "square"], [0, 3, "round"],
      [1, 1, "round"], [1, 3, "round"],
      [2, 2, "round"], [2, 3, "round"],
      [3, 1, "round"], [3, 2, "round"],
      [4, 3, "square"],
      [5, 4, "round"],
      [6, 4, "round"],
    ];
    for (const [box, color, shape] of removals) {
      const before = app.currentSnapshot()!.history.length;
      token(els, box, color, shape).click();
      await until(
        () => !app.isPending() && app.currentSnapshot()!.history.length === before + 1,
        `removal from box ${box}`,
      );
    }
    await until(() => els.board.querySelector(".status-won") !== null, "win banner");
    const boxes = app.currentSnapshot()!.boxes;
    expect(boxes.every((box) => box.length === 1)).toBe(true);
  });

  it("keeps the board intact and shows the reason when clicking a one-token box", async () => {
    els.modeInputs.find((i) => i.value === "variant")!.dispatchEvent(new Event("change"));
    await until(
      () => app.currentSnapshot()?.mode === "variant" && !app.isPending(),
      "variant session",
    );

    // Box 5 starts as [square 1, round 4]; one removal leaves a lone token.
    token(els, 5, 4, "round").click();
    await until(
      () => app.currentSnapshot()!.history.length === 1 && !app.isPending(),
      "first removal",
    );
    const before = els.board.querySelector(".boxes")!.outerHTML;

    token(els, 5, 1, "square").click();
    await until(() => els.board.querySelector(".alert-error") !== null, "409 banner");
    expect(els.board.querySelector(".alert-error")!.textContent).toContain("box-at-one-token");
    expect(els.board.querySelector(".boxes")!.outerHTML).toBe(before);
    expect(app.currentSnapshot()!.history.length).toBe(1);
  });
});
