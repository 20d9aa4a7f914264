/* tslint:disable */
/* eslint-disable */

export class CurveView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Maxima per 2π, or `undefined` when the grid is too coarse.
     */
    maxima(): number | undefined;
    phi(): Float64Array;
    values(): Float64Array;
}

export class ScanView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    beatPeriod(): number | undefined;
    deltaFMin(): number;
    diff(): Float64Array;
    fEstimate(): number;
    mCount(): number;
    nCount(): number;
    nulls(): Float64Array;
    t(): Float64Array;
    timeStep(): number;
}

export class StudyView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    crlbOracle(): number;
    crlbPaper(): number;
    phiHat(): number;
    varEmp(): number;
    varStdError(): number;
}

export function correlationCurve(kind: string, order: number, points: number): CurveView;

export function mcStudy(order: number, sigma: number, phi_true: number, trials: number, seed: number): StudyView;

export function spectrometerScan(kind: string, order: number, delta_f: number, delta_l: number): ScanView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curveview_free: (a: number, b: number) => void;
    readonly __wbg_scanview_free: (a: number, b: number) => void;
    readonly __wbg_studyview_free: (a: number, b: number) => void;
    readonly correlationCurve: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly curveview_maxima: (a: number) => number;
    readonly curveview_phi: (a: number) => [number, number];
    readonly curveview_values: (a: number) => [number, number];
    readonly mcStudy: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly scanview_beatPeriod: (a: number) => [number, number];
    readonly scanview_deltaFMin: (a: number) => number;
    readonly scanview_diff: (a: number) => [number, number];
    readonly scanview_fEstimate: (a: number) => number;
    readonly scanview_mCount: (a: number) => number;
    readonly scanview_nCount: (a: number) => number;
    readonly scanview_nulls: (a: number) => [number, number];
    readonly scanview_t: (a: number) => [number, number];
    readonly scanview_timeStep: (a: number) => number;
    readonly spectrometerScan: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly studyview_crlbOracle: (a: number) => number;
    readonly studyview_crlbPaper: (a: number) => number;
    readonly studyview_phiHat: (a: number) => number;
    readonly studyview_varEmp: (a: number) => number;
    readonly studyview_varStdError: (a: number) => number;
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
