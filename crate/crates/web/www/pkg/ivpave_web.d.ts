/* tslint:disable */
/* eslint-disable */

export class PaveResult {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    bisections: number;
    boundary: number;
    discarded: number;
    svg: string;
    truncated: boolean;
}

/**
 * Applies every contractor once to the box `[lo0, hi0, lo1, hi1, ...]`; one line per contractor.
 */
export function compare_contractors(source: string, bounds: Float64Array): string;

/**
 * Excess of the centered contraction over the true hull, relative to the width `2^-k`,
 * for boxes shrinking around the most regular sampled solution point. Returns one
 * ratio per `k` in `3..=k_max`.
 */
export function minimality_series(source: string, k_max: number): Float64Array;

/**
 * Paves `source` (problem text, or empty for the built-in) and renders its projection.
 */
export function pave_problem(source: string, eps: number, contractor: string): PaveResult;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_paveresult_bisections: (a: number) => number;
    readonly __wbg_get_paveresult_boundary: (a: number) => number;
    readonly __wbg_get_paveresult_discarded: (a: number) => number;
    readonly __wbg_get_paveresult_svg: (a: number) => [number, number];
    readonly __wbg_get_paveresult_truncated: (a: number) => number;
    readonly __wbg_paveresult_free: (a: number, b: number) => void;
    readonly __wbg_set_paveresult_bisections: (a: number, b: number) => void;
    readonly __wbg_set_paveresult_boundary: (a: number, b: number) => void;
    readonly __wbg_set_paveresult_discarded: (a: number, b: number) => void;
    readonly __wbg_set_paveresult_svg: (a: number, b: number, c: number) => void;
    readonly __wbg_set_paveresult_truncated: (a: number, b: number) => void;
    readonly compare_contractors: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly minimality_series: (a: number, b: number, c: number) => [number, number, number, number];
    readonly pave_problem: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
