/** Browser wiring: connects the session API, the move composer, and the
 * view builders to the DOM. All game state lives on the server; this file
 * only reflects server responses and forwards composed moves. */

import { ApiClient, ApiError } from "./api";
import {
  composeBlockChoice,
  composeChoice,
  composeCut,
  composeIdealPlay,
  composePointPlay,
  humanMoveKind,
} from "./composer";
import type { GroundElement, SessionState } from "./types";
import {
  arenaGrid,
  cylinderSegments,
  renderTrajectory,
  statusLine,
  traceTreeLevels,
} from "./views";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function keyOf(element: GroundElement): string {
  return JSON.stringify(element);
}

export class Console {
  private client: ApiClient;
  private state: SessionState | null = null;
  private selection = new Map<string, GroundElement>();
  private pickedSide: 0 | 1 | null = null;

  constructor(client: ApiClient) {
    this.client = client;
  }

  async start(): Promise<void> {
    const registries = await this.client.registries();
    fillSelect(byId<HTMLSelectElement>("game"), registries.games);
    fillSelect(byId<HTMLSelectElement>("ideal"), registries.ideals);
    fillSelect(byId<HTMLSelectElement>("strategy"), registries.strategies);

    byId<HTMLFormElement>("create-form").addEventListener("submit", (event) => {
      event.preventDefault();
      void this.createSession();
    });
    byId<HTMLButtonElement>("submit-move").addEventListener("click", () => {
      void this.submitComposed();
    });

    const sessionId = window.location.hash.slice(1);
    if (sessionId !== "") {
      await this.refresh(sessionId);
    }
  }

  private async createSession(): Promise<void> {
    const body = {
      game: byId<HTMLSelectElement>("game").value as SessionState["game"],
      ideal: byId<HTMLSelectElement>("ideal").value,
      human_role: byId<HTMLSelectElement>("role").value as "I" | "II",
      strategy: byId<HTMLSelectElement>("strategy").value,
      seed: Number(byId<HTMLInputElement>("seed").value),
      rounds: Number(byId<HTMLInputElement>("rounds").value),
    };
    await this.guarded(async () => {
      const state = await this.client.createSession(body);
      window.location.hash = state.id;
      this.accept(state);
    });
  }

  private async refresh(sessionId: string): Promise<void> {
    await this.guarded(async () => {
      this.accept(await this.client.getState(sessionId));
    });
  }

  /** Submit the staged selection as a cut / block choice / ideal play. */
  private async submitComposed(): Promise<void> {
    const state = this.state;
    if (state === null) {
      return;
    }
    const kind = humanMoveKind(state.game, state.human_role);
    const chosen = [...this.selection.values()];
    await this.guarded(async () => {
      if (kind === "cut") {
        await this.post(composeCut(chosen));
      } else if (kind === "choose_block") {
        if (this.pickedSide === null) {
          throw new ApiError(0, "pick a side of the cut first");
        }
        await this.post(composeBlockChoice(this.pickedSide, chosen));
      } else if (kind === "ideal_play") {
        await this.post(composeIdealPlay(chosen));
      }
    });
  }

  private async elementClicked(element: GroundElement): Promise<void> {
    const state = this.state;
    if (state === null || state.status !== "AWAITING_HUMAN") {
      return;
    }
    const kind = humanMoveKind(state.game, state.human_role);
    if (kind === "choose" && this.pickedSide !== null) {
      await this.guarded(() =>
        this.post(composeChoice(this.pickedSide as 0 | 1, element)),
      );
      return;
    }
    if (kind === "point_play") {
      await this.guarded(() => this.post(composePointPlay(element)));
      return;
    }
    const key = keyOf(element);
    if (this.selection.has(key)) {
      this.selection.delete(key);
    } else {
      this.selection.set(key, element);
    }
    this.render();
  }

  private async post(move: { kind: string; payload: object }): Promise<void> {
    const state = this.state;
    if (state === null) {
      return;
    }
    const next = await this.client.postMove(state.id, {
      kind: move.kind,
      payload: move.payload as Record<string, unknown>,
    });
    this.accept(next);
  }

  /** Run an API call; on rejection show the server's violation text and
   * leave the rendered state untouched. */
  private async guarded(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.setBanner("");
    } catch (error) {
      if (error instanceof ApiError) {
        this.setBanner(error.message);
        return;
      }
      throw error;
    }
  }

  private accept(state: SessionState): void {
    this.state = state;
    this.selection.clear();
    this.pickedSide = null;
    this.render();
  }

  private setBanner(text: string): void {
    const banner = byId<HTMLDivElement>("banner");
    banner.textContent = text;
    banner.hidden = text === "";
  }

  private render(): void {
    const state = this.state;
    if (state === null) {
      return;
    }
    const status = statusLine(state);
    const statusNode = byId<HTMLDivElement>("status");
    statusNode.textContent = status.text;
    statusNode.dataset.tone = status.tone;

    this.renderArena(state);
    this.renderTrajectoryChart(state);
    this.renderMoves(state);
    byId<HTMLButtonElement>("submit-move").hidden =
      state.status !== "AWAITING_HUMAN" ||
      humanMoveKind(state.game, state.human_role) === "choose" ||
      humanMoveKind(state.game, state.human_role) === "point_play";
  }

  private renderArena(state: SessionState): void {
    const host = byId<HTMLDivElement>("arena");
    host.textContent = "";
    if (state.ground.tag === "clopen") {
      this.renderCylinders(host, state);
      return;
    }
    if (state.sides !== null) {
      state.sides.forEach((side, index) => {
        const box = document.createElement("div");
        box.className = "side";
        const title = document.createElement("button");
        title.textContent = `side ${index}`;
        title.addEventListener("click", () => {
          this.pickedSide = index as 0 | 1;
          this.render();
        });
        if (this.pickedSide === index) {
          title.classList.add("picked");
        }
        box.appendChild(title);
        this.renderGrid(box, side);
        host.appendChild(box);
      });
      return;
    }
    this.renderGrid(host, state.arena);
    this.renderTree(state);
  }

  private renderGrid(host: HTMLElement, elements: GroundElement[]): void {
    for (const cell of arenaGrid(elements)) {
      const button = document.createElement("button");
      button.textContent = cell.label;
      button.style.gridColumn = String(cell.col + 1);
      button.style.gridRow = String(cell.row + 1);
      if (this.selection.has(keyOf(cell.element))) {
        button.classList.add("selected");
      }
      button.addEventListener("click", () => {
        void this.elementClicked(cell.element);
      });
      host.appendChild(button);
    }
  }

  private renderCylinders(host: HTMLElement, state: SessionState): void {
    for (const element of state.arena) {
      const row = document.createElement("div");
      row.className = "cylinder";
      if (this.selection.has(keyOf(element))) {
        row.classList.add("selected");
      }
      for (const segment of cylinderSegments(String(element))) {
        const bar = document.createElement("span");
        bar.className = "segment";
        bar.style.left = `${segment.start * 100}%`;
        bar.style.width = `${segment.width * 100}%`;
        row.appendChild(bar);
      }
      row.addEventListener("click", () => {
        void this.elementClicked(element);
      });
      host.appendChild(row);
    }
  }

  private renderTree(state: SessionState): void {
    const host = byId<HTMLDivElement>("tree");
    host.textContent = "";
    const naturals = state.outcome.filter(
      (element): element is number => typeof element === "number",
    );
    for (const level of traceTreeLevels(naturals, 3)) {
      const row = document.createElement("div");
      row.textContent = level
        .map((path) => (path.length === 0 ? "·" : path.join(".")))
        .join("  ");
      host.appendChild(row);
    }
  }

  private renderTrajectoryChart(state: SessionState): void {
    const chart = renderTrajectory(state);
    const host = byId<HTMLDivElement>("trajectory");
    host.textContent = "";
    for (const point of chart.points) {
      const bar = document.createElement("div");
      bar.className = "bar";
      const value = point.value === null ? "—" : String(point.value);
      bar.textContent = `r${point.round}: φ=${value}`;
      bar.style.width = `${Math.min(point.value ?? 0, 20) * 5}%`;
      host.appendChild(bar);
    }
    const outcomeNode = byId<HTMLDivElement>("outcome");
    outcomeNode.textContent =
      chart.finalOutcome === null
        ? ""
        : `outcome: {${chart.finalOutcome.map(keyOf).join(", ")}}`;
  }

  private renderMoves(state: SessionState): void {
    const host = byId<HTMLOListElement>("moves");
    host.textContent = "";
    for (const move of state.moves) {
      const item = document.createElement("li");
      item.textContent = `${move.player} ${move.kind} ${JSON.stringify(move.payload)}`;
      host.appendChild(item);
    }
  }
}

function fillSelect(select: HTMLSelectElement, values: string[]): void {
  select.textContent = "";
  for (const value of values) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    select.appendChild(option);
  }
}

export function boot(baseUrl: string): void {
  const app = new Console(new ApiClient(baseUrl));
  void app.start();
}
