/**
 * DOM wiring: reads the form, renders ViewState, forwards button
 * clicks to the controller. All decisions live in state.ts/controller.ts.
 */

import { SessionApi } from "./api.js";
import { SessionController } from "./controller.js";
import { renderCurve } from "./curve.js";
import {
  canAnswer,
  CHOICES,
  Choice,
  knotsToCsv,
  promptCards,
  validateForm,
  ViewState,
} from "./state.js";

const STASH_KEY = "cardinal-scale-session";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

export function mount(): void {
  // ?api=http://host:port points the UI at a service on another origin
  const override = new URLSearchParams(window.location.search).get("api");
  const base = (override ?? window.location.origin).replace(/\/$/, "");
  const api = new SessionApi(base);
  const controller = new SessionController(api);

  const form = {
    lo: el<HTMLInputElement>("cfg-lo"),
    hi: el<HTMLInputElement>("cfg-hi"),
    tol: el<HTMLSelectElement>("cfg-tol"),
    labelFormat: el<HTMLInputElement>("cfg-label-format"),
    start: el<HTMLButtonElement>("cfg-start"),
    validation: el<HTMLElement>("cfg-validation"),
  };
  const banner = el<HTMLElement>("banner");
  const budget = el<HTMLElement>("budget");
  const sentence = el<HTMLElement>("sentence");
  const cardFirst = el<HTMLElement>("card-first");
  const cardSecond = el<HTMLElement>("card-second");
  const buttons = new Map<Choice, HTMLButtonElement>([
    ["first larger", el<HTMLButtonElement>("btn-first")],
    ["about equal", el<HTMLButtonElement>("btn-equal")],
    ["second larger", el<HTMLButtonElement>("btn-second")],
  ]);
  const retry = el<HTMLButtonElement>("btn-retry");
  const chart = el<HTMLElement>("chart");
  const download = el<HTMLAnchorElement>("download");
  const history = el<HTMLElement>("history");

  function render(state: ViewState): void {
    banner.textContent = state.banner;
    banner.dataset.phase = state.phase;
    budget.textContent =
      state.queryBudget === null ? "" : `Query budget: about ${state.queryBudget}`;

    if (state.query !== null) {
      const [first, second] = promptCards(state.query);
      sentence.textContent = state.query.prompt_data.sentence;
      cardFirst.textContent = `${first.title}: ${first.body}`;
      cardSecond.textContent = `${second.title}: ${second.body}`;
    } else {
      sentence.textContent = "";
      cardFirst.textContent = "";
      cardSecond.textContent = "";
    }

    const live = canAnswer(state);
    for (const button of buttons.values()) {
      button.disabled = !live;
    }
    retry.hidden = state.phase !== "error";

    chart.innerHTML = renderCurve(state.knots);
    if (state.phase === "complete" && state.knots.length > 0) {
      download.href =
        "data:text/csv;charset=utf-8," + encodeURIComponent(knotsToCsv(state.knots));
      download.hidden = false;
    } else {
      download.hidden = true;
    }

    history.innerHTML = "";
    for (const record of state.history) {
      const item = document.createElement("li");
      item.textContent = `#${record.queryId} ${record.sentence} -> ${record.choice}`;
      history.appendChild(item);
    }

    if (state.sessionId !== null) {
      window.localStorage.setItem(STASH_KEY, state.sessionId);
    }
  }

  controller.subscribe(render);

  form.start.addEventListener("click", () => {
    const lo = Number(form.lo.value);
    const hi = Number(form.hi.value);
    const tol = Number(form.tol.value);
    const problem = validateForm(lo, hi, tol);
    form.validation.textContent = problem ?? "";
    if (problem !== null) {
      return;
    }
    const labelFormat = form.labelFormat.value.trim();
    void controller.start({
      lo,
      hi,
      tol,
      ...(labelFormat === "" ? {} : { label_format: labelFormat }),
    });
  });

  for (const choice of CHOICES) {
    buttons.get(choice)!.addEventListener("click", () => {
      void controller.answer(choice);
    });
  }

  retry.addEventListener("click", () => {
    void controller.retry();
  });

  const stashed = window.localStorage.getItem(STASH_KEY);
  if (stashed !== null) {
    void controller.resume(stashed).then((alive) => {
      if (!alive) {
        window.localStorage.removeItem(STASH_KEY);
      }
    });
  }
}

mount();
