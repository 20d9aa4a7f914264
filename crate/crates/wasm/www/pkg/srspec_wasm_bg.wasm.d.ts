/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curveview_free: (a: number, b: number) => void;
export const __wbg_scanview_free: (a: number, b: number) => void;
export const __wbg_studyview_free: (a: number, b: number) => void;
export const correlationCurve: (a: number, b: number, c: number, d: number) => [number, number, number];
export const curveview_maxima: (a: number) => number;
export const curveview_phi: (a: number) => [number, number];
export const curveview_values: (a: number) => [number, number];
export const mcStudy: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const scanview_beatPeriod: (a: number) => [number, number];
export const scanview_deltaFMin: (a: number) => number;
export const scanview_diff: (a: number) => [number, number];
export const scanview_fEstimate: (a: number) => number;
export const scanview_mCount: (a: number) => number;
export const scanview_nCount: (a: number) => number;
export const scanview_nulls: (a: number) => [number, number];
export const scanview_t: (a: number) => [number, number];
export const scanview_timeStep: (a: number) => number;
export const spectrometerScan: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const studyview_crlbOracle: (a: number) => number;
export const studyview_crlbPaper: (a: number) => number;
export const studyview_phiHat: (a: number) => number;
export const studyview_varEmp: (a: number) => number;
export const studyview_varStdError: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
