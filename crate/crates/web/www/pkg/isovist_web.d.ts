/* tslint:disable */
/* eslint-disable */

/**
 * Measure field over a grid: `{measure, origin, spacing, n_cols, n_rows, values, min, max}`.
 */
export function field(scene: string, measure: string, spacing: number, n_rays: number): string;

/**
 * Sampled isovist at a point: `{viewpoint, polygon, exact_area, measures}`.
 */
export function isovist(scene: string, x: number, y: number, n_rays: number): string;

/**
 * GeoJSON line network: `rope` or `skeleton`.
 */
export function lines(scene: string, kind: string, spacing: number, n_rays: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly field: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly isovist: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly lines: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
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
