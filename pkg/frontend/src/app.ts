// The controller: owns the current session + UI state, talks to the
// service, and re-renders the board from the latest snapshot after every
// server response. The board never changes on a failed request; errors
// surface in a banner with the service's reason verbatim.

import {
  ApiClient,
  ApiError,
  validateSnapshot,
  type CatalogEntry,
  type InstanceSource,
  type Mode,
  type Move,
  type Snapshot,
} from "./api.js";
import { idleUi, renderBoard, type UiState } from "./render.js";

export interface AppElements {
  board: HTMLElement;
  instanceSelect: HTMLSelectElement;
  modeInputs: HTMLInputElement[];
  newGameButton: HTMLButtonElement;
  hintButton: HTMLButtonElement;
  undoButton: HTMLButtonElement;
  hintMessage: HTMLElement;
}

const RANDOM_ID = "random-3sat";

export class App {
  private sessionId: string | null = null;
  private snapshot: Snapshot | null = null;
  private ui: UiState = { ...idleUi };
  private mode: Mode = "original";

  constructor(
    private readonly doc: Document,
    private readonly els: AppElements,
    private readonly api: ApiClient,
  ) {
    els.board.addEventListener("click", (event) => this.onBoardClick(event));
    els.newGameButton.addEventListener("click", () => {
      void this.newGame();
    });
    els.hintButton.addEventListener("click", () => {
      void this.requestHint();
    });
    els.undoButton.addEventListener("click", () => {
      void this.requestUndo();
    });
    for (const input of els.modeInputs) {
      input.addEventListener("change", () => this.onModeToggle(input.value as Mode));
    }
  }

  async init(): Promise<void> {
    try {
      const { instances } = await this.api.listInstances();
      this.fillCatalog(instances);
    } catch (err) {
      this.ui = { ...this.ui, banner: { kind: "error", text: describe(err) } };
    }
    await this.newGame();
  }

  private fillCatalog(instances: CatalogEntry[]): void {
    const select = this.els.instanceSelect;
    select.innerHTML = "";
    for (const entry of instances) {
      const option = this.doc.createElement("option");
      option.value = entry.id;
      option.textContent = `${entry.id} (${entry.numBoxes} boxes, ${entry.numColors} colors)`;
      select.appendChild(option);
    }
    const random = this.doc.createElement("option");
    random.value = RANDOM_ID;
    random.textContent = "random 3-SAT (8 vars, 20 boxes)";
    select.appendChild(random);
  }

  private chosenSource(): InstanceSource {
    const id = this.els.instanceSelect.value || "paper-example";
    if (id === RANDOM_ID) {
      return {
        gen: {
          numVars: 8,
          numClauses: 20,
          clauseWidth: 3,
          seed: Math.floor(Math.random() * 2 ** 31),
        },
      };
    }
    return { builtin: id };
  }

  async newGame(): Promise<void> {
    await this.mutate(async () => {
      const created = await this.api.createGame(this.chosenSource(), this.mode);
      this.sessionId = created.sessionId;
      this.snapshot = validateSnapshot(created.snapshot);
      this.ui = { ...idleUi };
      this.els.hintMessage.textContent = "";
    });
  }

  private onModeToggle(mode: Mode): void {
    if (mode === this.mode) return;
    const midGame =
      this.snapshot !== null &&
      this.snapshot.status === "playing" &&
      this.snapshot.history.length > 0;
    if (midGame) {
      // Modes are not convertible mid-session; ask before discarding.
      this.ui = { ...this.ui, confirm: { kind: "new-game", mode } };
      this.render();
      return;
    }
    this.mode = mode;
    void this.newGame();
  }

  private onBoardClick(event: Event): void {
    const target = (event.target as HTMLElement | null)?.closest?.("[data-action]");
    if (!(target instanceof HTMLElement) || this.ui.pending) return;
    const action = target.dataset.action;
    if (action === "token") {
      this.onTokenClick(target);
    } else if (action === "confirm-yes") {
      void this.onConfirmYes();
    } else if (action === "confirm-no") {
      this.ui = { ...this.ui, confirm: null };
      this.render();
    }
  }

  private onTokenClick(el: HTMLElement): void {
    if (!this.snapshot || this.snapshot.status !== "playing") return;
    const color = Number(el.dataset.color);
    const shape = el.dataset.shape as "square" | "round";
    if (this.snapshot.mode === "original") {
      // One click wipes the shape board-wide, so ask first.
      this.ui = { ...this.ui, banner: null, confirm: { kind: "move", move: { color, shape } } };
      this.render();
      return;
    }
    const boxIndex = Number(el.dataset.box);
    void this.applyMove({ boxIndex, color, shape });
  }

  private async onConfirmYes(): Promise<void> {
    const confirm = this.ui.confirm;
    if (!confirm) return;
    this.ui = { ...this.ui, confirm: null };
    if (confirm.kind === "move") {
      await this.applyMove(confirm.move);
    } else {
      this.mode = confirm.mode;
      this.syncModeInputs();
      await this.newGame();
    }
  }

  private async applyMove(move: Move): Promise<void> {
    await this.mutate(async () => {
      if (!this.sessionId) return;
      this.snapshot = validateSnapshot(await this.api.applyMove(this.sessionId, move));
      this.ui = { ...idleUi };
      this.els.hintMessage.textContent = "";
    });
  }

  private async requestUndo(): Promise<void> {
    await this.mutate(async () => {
      if (!this.sessionId) return;
      this.snapshot = validateSnapshot(await this.api.undo(this.sessionId));
      this.ui = { ...idleUi };
    });
  }

  private async requestHint(): Promise<void> {
    await this.mutate(async () => {
      if (!this.sessionId) return;
      const hint = await this.api.hint(this.sessionId);
      this.els.hintMessage.textContent = hint.message;
      this.ui = { ...this.ui, highlight: hint.move };
    });
  }

  /** Run one mutation with the pending flag set; 4xx/5xx responses leave
   * the snapshot untouched and surface as a banner. */
  private async mutate(action: () => Promise<void>): Promise<void> {
    if (this.ui.pending) return;
    this.ui = { ...this.ui, pending: true };
    this.render();
    try {
      await action();
    } catch (err) {
      this.ui = { ...this.ui, banner: { kind: "error", text: describe(err) } };
    } finally {
      this.ui = { ...this.ui, pending: false };
      this.render();
    }
  }

  private syncModeInputs(): void {
    for (const input of this.els.modeInputs) {
      input.checked = input.value === this.mode;
    }
  }

  render(): void {
    const board = this.els.board;
    board.innerHTML = "";
    if (this.snapshot) {
      board.appendChild(renderBoard(this.doc, this.snapshot, this.ui));
    }
    this.els.undoButton.disabled = this.ui.pending || !this.snapshot || this.snapshot.history.length === 0;
    this.els.hintButton.disabled =
      this.ui.pending || !this.snapshot || this.snapshot.status !== "playing";
    this.els.newGameButton.disabled = this.ui.pending;
  }

  /** Test hook: the latest rendered snapshot. */
  currentSnapshot(): Snapshot | null {
    return this.snapshot;
  }

  isPending(): boolean {
    return this.ui.pending;
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  if (err instanceof Error) return `request failed: ${err.message}`;
  return "request failed";
}
