/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_paveresult_bisections: (a: number) => number;
export const __wbg_get_paveresult_boundary: (a: number) => number;
export const __wbg_get_paveresult_discarded: (a: number) => number;
export const __wbg_get_paveresult_svg: (a: number) => [number, number];
export const __wbg_get_paveresult_truncated: (a: number) => number;
export const __wbg_paveresult_free: (a: number, b: number) => void;
export const __wbg_set_paveresult_bisections: (a: number, b: number) => void;
export const __wbg_set_paveresult_boundary: (a: number, b: number) => void;
export const __wbg_set_paveresult_discarded: (a: number, b: number) => void;
export const __wbg_set_paveresult_svg: (a: number, b: number, c: number) => void;
export const __wbg_set_paveresult_truncated: (a: number, b: number) => void;
export const compare_contractors: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const minimality_series: (a: number, b: number, c: number) => [number, number, number, number];
export const pave_problem: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
