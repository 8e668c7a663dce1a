// Player entry point: load a puzzle, run the countdown, relay moves through
// the legality mirror, and submit the session when done or when time runs
// out. The server stays the single source of truth for grading.

import { fetchPuzzle, submitSession } from "./api.js";
import { PlaySession } from "./session.js";
import * as ui from "./ui.js";
import type { Direction, Puzzle, SessionVerdict } from "./types.js";

const TASKS = ["sokoban", "klotski", "cube_roll", "rubiks", "mental_rotation"];
const TIERS = ["all", "easy", "medium", "hard"];

interface AppState {
    session: PlaySession | null;
    selectedBlock: string | null;
    pickedColor: string | null;
    gridSelects: HTMLSelectElement[][] | null;
    submitted: boolean;
    pendingSubmission: (() => Promise<void>) | null;
    timer: number | null;
}

const state: AppState = {
    session: null,
    selectedBlock: null,
    pickedColor: null,
    gridSelects: null,
    submitted: false,
    pendingSubmission: null,
    timer: null,
};

const $ = (id: string) => document.getElementById(id) as HTMLElement;

function setupControls(): void {
    const taskSelect = $("task") as HTMLSelectElement;
    for (const task of TASKS) {
        const option = document.createElement("option");
        option.value = task;
        option.textContent = task;
        taskSelect.appendChild(option);
    }
    const tierSelect = $("tier") as HTMLSelectElement;
    for (const tier of TIERS) {
        const option = document.createElement("option");
        option.value = tier;
        option.textContent = tier;
        tierSelect.appendChild(option);
    }
    $("load").addEventListener("click", () => void loadPuzzle());
    $("submit").addEventListener("click", () => void submitNow(false));
    $("undo").addEventListener("click", () => {
        if (state.session && !state.submitted) {
            state.session.undo();
            renderBoard();
        }
    });
    $("retry").addEventListener("click", () => {
        if (state.pendingSubmission) void state.pendingSubmission();
    });
    document.addEventListener("keydown", onKey);
    ($("notes") as HTMLTextAreaElement).addEventListener("input", (ev) => {
        if (state.session) state.session.notes = (ev.target as HTMLTextAreaElement).value;
    });
}

async function loadPuzzle(): Promise<void> {
    const task = ($("task") as HTMLSelectElement).value;
    const tier = ($("tier") as HTMLSelectElement).value;
    const name = ($("player") as HTMLInputElement).value || "anon";
    setVerdict("");
    try {
        const puzzle = await fetchPuzzle(task, tier, name);
        startSession(puzzle);
    } catch (err) {
        setVerdict(`could not load a puzzle: ${String(err)}`, "bad");
    }
}

function startSession(puzzle: Puzzle): void {
    state.session = new PlaySession(puzzle);
    state.selectedBlock = null;
    state.pickedColor = null;
    state.gridSelects = null;
    state.submitted = false;
    state.pendingSubmission = null;
    ($("notes") as HTMLTextAreaElement).value = "";
    $("prompt").textContent = puzzle.prompt;
    $("meta").textContent = `${puzzle.task} / ${puzzle.tier} / ${puzzle.instance_id}`;
    ui.renderImages($("images"), puzzle);
    renderBoard();
    renderAnswerForm();
    if (state.timer !== null) window.clearInterval(state.timer);
    state.timer = window.setInterval(tick, 250);
    tick();
}

function renderBoard(): void {
    const container = $("board");
    if (!state.session) return ui.clear(container);
    const task = state.session.puzzle.task;
    if (task === "sokoban") {
        ui.renderSokoban(container, state.session);
    } else if (task === "klotski") {
        ui.renderKlotski(container, state.session, state.selectedBlock, (letter) => {
            state.selectedBlock = letter;
            renderBoard();
        });
    } else {
        ui.clear(container);
    }
    $("movelog").textContent = state.session.moves().join(" ");
}

function renderAnswerForm(): void {
    const container = $("answer");
    if (!state.session) return ui.clear(container);
    const spec = state.session.puzzle.answer_spec;
    if (spec.kind === "color") {
        ui.renderColorForm(container, (color) => {
            state.pickedColor = color;
            setVerdict(`picked ${color}; submit when ready`, "");
        });
    } else if (spec.kind === "grid") {
        state.gridSelects = ui.renderGridForm(container, spec.rows ?? 1, spec.cols ?? 1);
    } else {
        ui.clear(container);
    }
}

function onKey(ev: KeyboardEvent): void {
    if (!state.session || state.submitted) return;
    const keyToDir: Record<string, Direction> = {
        ArrowUp: "U",
        ArrowDown: "D",
        ArrowLeft: "L",
        ArrowRight: "R",
    };
    const dir = keyToDir[ev.key];
    if (!dir) return;
    const task = state.session.puzzle.task;
    if (task === "sokoban") {
        ev.preventDefault();
        state.session.tryApply(dir);
        renderBoard();
    } else if (task === "klotski" && state.selectedBlock) {
        ev.preventDefault();
        state.session.tryApply(state.selectedBlock + dir);
        renderBoard();
    }
}

function tick(): void {
    if (!state.session) return;
    const remaining = state.session.remainingMs();
    $("countdown").textContent = ui.formatMs(remaining);
    if (remaining <= 0 && !state.submitted) {
        // time is up: auto-submit whatever we have, flagged over-time
        void submitNow(true);
    }
}

async function submitNow(expired: boolean): Promise<void> {
    const session = state.session;
    if (!session || state.submitted) return;
    state.submitted = true;
    const puzzle = session.puzzle;
    const elapsed = expired
        ? Math.max(session.elapsedMs(), session.timeLimitMs + 1)
        : session.elapsedMs();
    const body = {
        instance_id: puzzle.instance_id,
        session: ($("player") as HTMLInputElement).value || "anon",
        elapsed_ms: Math.round(elapsed),
        ...(puzzle.board !== null
            ? { moves: session.moves() }
            : { answer: answerText() }),
    };
    const attempt = async () => {
        try {
            const verdict = await submitSession(body);
            state.pendingSubmission = null;
            $("retry").hidden = true;
            showVerdict(verdict);
        } catch (err) {
            // keep all local state; offer a retry
            state.pendingSubmission = attempt;
            $("retry").hidden = false;
            setVerdict(`submission failed (${String(err)}); press retry`, "bad");
        }
    };
    state.pendingSubmission = attempt;
    await attempt();
}

function answerText(): string {
    if (!state.session) return "";
    const spec = state.session.puzzle.answer_spec;
    if (spec.kind === "color") return state.pickedColor ?? "";
    if (spec.kind === "grid" && state.gridSelects) return ui.gridFormAnswer(state.gridSelects);
    return "";
}

function showVerdict(verdict: SessionVerdict): void {
    const parts = [
        verdict.valid ? "valid" : "invalid",
        verdict.correct ? "correct" : "incorrect",
    ];
    if (verdict.over_time) parts.push("over time");
    if (verdict.optimal_len !== null) parts.push(`optimal ${verdict.optimal_len} moves`);
    setVerdict(parts.join(" / "), verdict.correct && !verdict.over_time ? "good" : "bad");
}

function setVerdict(text: string, kind: "good" | "bad" | "" = ""): void {
    const el = $("verdict");
    el.textContent = text;
    el.className = kind;
}

setupControls();
