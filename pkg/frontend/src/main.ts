import { ApiClient } from "./api.js";
import { App, type AppElements } from "./app.js";

function must<T extends Element>(selector: string): T {
  const el = document.querySelector<T>(selector);
  if (!el) throw new Error(`missing element: ${selector}`);
  return el;
}

const els: AppElements = {
  board: must<HTMLElement>("#board"),
  instanceSelect: must<HTMLSelectElement>("#instance-select"),
  modeInputs: Array.from(document.querySelectorAll<HTMLInputElement>("input[name=mode]")),
  newGameButton: must<HTMLButtonElement>("#new-game"),
  hintButton: must<HTMLButtonElement>("#hint"),
  undoButton: must<HTMLButtonElement>("#undo"),
  hintMessage: must<HTMLElement>("#hint-message"),
};

const app = new App(document, els, new ApiClient(""));
void app.init();
