//! C ABI for the steady-state transport solver.
//!
//! Conventions:
//! * Handles (`PdsteadyParams`, `PdsteadySolution`) are opaque; create and
//!   destroy them only through this API. Passing a handle after freeing it
//!   is undefined behavior, as in any C library.
//! * Every fallible call returns a [`PdsteadyStatus`]; `Ok` is zero. On
//!   failure, `pdsteady_last_error` returns a thread-local UTF-8 message
//!   valid until the next failing call on the same thread.
//! * Output pointers are written only on `Ok`.

use pdsteady::config::load_config;
use pdsteady::output::{summarize, write_profiles_csv};
use pdsteady::profiles::steady_residual_check;
use pdsteady::{solve_profiles, ParameterSet, SteadyStateSolution, VoidVolumeModel};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdsteadyStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The named parameter does not exist.
    UnknownField = 3,
    /// Parameter values failed validation.
    InvalidParams = 4,
    /// Config file could not be read or parsed.
    ConfigError = 5,
    /// The steady-state solve failed.
    SolveFailed = 6,
    /// Index or buffer length out of range.
    OutOfRange = 7,
}

/// Void-volume closure selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdsteadyCase {
    /// nu(x) = (nu_min + nu_max) / 2
    ConstantNu = 0,
    /// nu(x) = nu_max - (nu_max - nu_min) x
    LinearNu = 1,
}

/// Solution column selector for the accessor functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdsteadyColumn {
    X = 0,
    /// Nondimensional glucose
    U = 1,
    /// Nondimensional albumin
    W = 2,
    /// Nondimensional pressure
    P = 3,
    /// Dimensional glucose, mmol/mL
    CG = 4,
    /// Dimensional albumin, mmol/mL
    CA = 5,
    /// Dimensional pressure, mmHg
    PDim = 6,
    /// Fluid flux density from blood, mL/(min cm^3)
    QU = 7,
    /// Fluid flux across tissue, mL/(min cm^2)
    JU = 8,
}

/// Opaque parameter-set handle.
pub struct PdsteadyParams {
    inner: ParameterSet,
}

/// Opaque solution handle.
pub struct PdsteadySolution {
    inner: SteadyStateSolution,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl std::fmt::Display) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).unwrap_or_default();
    });
}

fn fail(status: PdsteadyStatus, message: impl std::fmt::Display) -> PdsteadyStatus {
    set_error(message);
    status
}

/// Last error message for this thread, or an empty string. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pdsteady_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// New handle holding the bundled clinical reference parameter set.
#[no_mangle]
pub extern "C" fn pdsteady_params_default() -> *mut PdsteadyParams {
    Box::into_raw(Box::new(PdsteadyParams {
        inner: ParameterSet::reference(),
    }))
}

/// Load parameters from a TOML config file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be valid for a
/// single pointer write.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_params_load(
    path: *const c_char,
    out: *mut *mut PdsteadyParams,
) -> PdsteadyStatus {
    if path.is_null() || out.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let path = match CStr::from_ptr(path).to_str() {
        Ok(p) => p,
        Err(e) => return fail(PdsteadyStatus::InvalidUtf8, e),
    };
    match load_config(Path::new(path)) {
        Ok(params) => {
            *out = Box::into_raw(Box::new(PdsteadyParams { inner: params }));
            PdsteadyStatus::Ok
        }
        Err(e) => fail(PdsteadyStatus::ConfigError, e),
    }
}

/// Set one parameter by its config key (e.g. "pa_a").
///
/// # Safety
/// `params` must be a live handle; `name` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_params_set(
    params: *mut PdsteadyParams,
    name: *const c_char,
    value: f64,
) -> PdsteadyStatus {
    if params.is_null() || name.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let name = match CStr::from_ptr(name).to_str() {
        Ok(n) => n,
        Err(e) => return fail(PdsteadyStatus::InvalidUtf8, e),
    };
    match (*params).inner.set_field(name, value) {
        Ok(()) => PdsteadyStatus::Ok,
        Err(e) => fail(PdsteadyStatus::UnknownField, e),
    }
}

/// Read one parameter by its config key.
///
/// # Safety
/// `params` must be a live handle; `name` valid NUL-terminated; `out`
/// valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_params_get(
    params: *const PdsteadyParams,
    name: *const c_char,
    out: *mut f64,
) -> PdsteadyStatus {
    if params.is_null() || name.is_null() || out.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let name = match CStr::from_ptr(name).to_str() {
        Ok(n) => n,
        Err(e) => return fail(PdsteadyStatus::InvalidUtf8, e),
    };
    match (*params).inner.get_field(name) {
        Ok(v) => {
            *out = v;
            PdsteadyStatus::Ok
        }
        Err(e) => fail(PdsteadyStatus::UnknownField, e),
    }
}

/// Free a parameter handle. Null is a no-op.
///
/// # Safety
/// `params` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_params_free(params: *mut PdsteadyParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Solve the steady state on `nodes` grid points (0 selects the default
/// resolution) and hand back a solution handle.
///
/// # Safety
/// `params` must be a live handle; `out` valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solve(
    params: *const PdsteadyParams,
    case: PdsteadyCase,
    nodes: usize,
    out: *mut *mut PdsteadySolution,
) -> PdsteadyStatus {
    if params.is_null() || out.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let p = &(*params).inner;
    let model = match case {
        PdsteadyCase::ConstantNu => VoidVolumeModel::constant_from(p),
        PdsteadyCase::LinearNu => VoidVolumeModel::linear_from(p),
    };
    let nodes = if nodes == 0 { pdsteady::bvp::DEFAULT_NODES } else { nodes };
    match solve_profiles(p, model, nodes) {
        Ok(solution) => {
            *out = Box::into_raw(Box::new(PdsteadySolution { inner: solution }));
            PdsteadyStatus::Ok
        }
        Err(e) => fail(PdsteadyStatus::SolveFailed, e),
    }
}

/// Number of grid points in a solution; 0 for a null handle.
///
/// # Safety
/// `solution` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_len(solution: *const PdsteadySolution) -> usize {
    if solution.is_null() {
        0
    } else {
        (*solution).inner.x.len()
    }
}

fn column_of(solution: &SteadyStateSolution, column: PdsteadyColumn) -> &[f64] {
    match column {
        PdsteadyColumn::X => &solution.x,
        PdsteadyColumn::U => &solution.u,
        PdsteadyColumn::W => &solution.w,
        PdsteadyColumn::P => &solution.p,
        PdsteadyColumn::CG => &solution.c_g,
        PdsteadyColumn::CA => &solution.c_a,
        PdsteadyColumn::PDim => &solution.p_dim,
        PdsteadyColumn::QU => &solution.q_u,
        PdsteadyColumn::JU => &solution.j_u,
    }
}

/// Read one value of a solution column.
///
/// # Safety
/// `solution` must be a live handle; `out` valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_value(
    solution: *const PdsteadySolution,
    column: PdsteadyColumn,
    index: usize,
    out: *mut f64,
) -> PdsteadyStatus {
    if solution.is_null() || out.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let data = column_of(&(*solution).inner, column);
    match data.get(index) {
        Some(&v) => {
            *out = v;
            PdsteadyStatus::Ok
        }
        None => fail(
            PdsteadyStatus::OutOfRange,
            format!("index {index} out of range for {} grid points", data.len()),
        ),
    }
}

/// Copy an entire solution column into a caller buffer of length `len`,
/// which must equal the grid length.
///
/// # Safety
/// `solution` must be a live handle; `buffer` valid for `len` f64 writes.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_column(
    solution: *const PdsteadySolution,
    column: PdsteadyColumn,
    buffer: *mut f64,
    len: usize,
) -> PdsteadyStatus {
    if solution.is_null() || buffer.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let data = column_of(&(*solution).inner, column);
    if len != data.len() {
        return fail(
            PdsteadyStatus::OutOfRange,
            format!("buffer length {len} does not match grid length {}", data.len()),
        );
    }
    std::ptr::copy_nonoverlapping(data.as_ptr(), buffer, len);
    PdsteadyStatus::Ok
}

/// Signed total cavity outflow (mL/min) of a solution; its magnitude is
/// the absolute value.
///
/// # Safety
/// `solution` must be a live handle; `out` valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_outflow(
    solution: *const PdsteadySolution,
    out: *mut f64,
) -> PdsteadyStatus {
    if solution.is_null() || out.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let (signed, _) = (*solution).inner.total_cavity_outflow();
    *out = signed;
    PdsteadyStatus::Ok
}

/// Number of warnings attached to a solution (e.g. negative albumin).
///
/// # Safety
/// `solution` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_warning_count(
    solution: *const PdsteadySolution,
) -> usize {
    if solution.is_null() {
        0
    } else {
        (*solution).inner.warnings.len()
    }
}

/// Max scaled residuals of the dimensional steady balances, written as
/// (fluid, glucose, albumin) into a 3-element buffer.
///
/// # Safety
/// `solution` must be a live handle; `out3` valid for three f64 writes.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_residuals(
    solution: *const PdsteadySolution,
    out3: *mut f64,
) -> PdsteadyStatus {
    if solution.is_null() || out3.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let s = &(*solution).inner;
    let (fluid, glucose, albumin) = steady_residual_check(s, &s.params).scaled();
    *out3 = fluid;
    *out3.add(1) = glucose;
    *out3.add(2) = albumin;
    PdsteadyStatus::Ok
}

/// Write the profile CSV (columns x,u,w,p,C_G,C_A,P,q_U,j_U) to a file.
///
/// # Safety
/// `solution` must be a live handle; `path` valid NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_write_csv(
    solution: *const PdsteadySolution,
    path: *const c_char,
) -> PdsteadyStatus {
    if solution.is_null() || path.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    let path = match CStr::from_ptr(path).to_str() {
        Ok(p) => p,
        Err(e) => return fail(PdsteadyStatus::InvalidUtf8, e),
    };
    let file = match std::fs::File::create(path) {
        Ok(f) => f,
        Err(e) => return fail(PdsteadyStatus::ConfigError, e),
    };
    match write_profiles_csv(&(*solution).inner, std::io::BufWriter::new(file)) {
        Ok(()) => PdsteadyStatus::Ok,
        Err(e) => fail(PdsteadyStatus::SolveFailed, e),
    }
}

/// Boundary flux density q_U(0) of a solution, mL/(min cm^3).
///
/// # Safety
/// `solution` must be a live handle; `out` valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_q0(
    solution: *const PdsteadySolution,
    out: *mut f64,
) -> PdsteadyStatus {
    if solution.is_null() || out.is_null() {
        return fail(PdsteadyStatus::NullPointer, "null pointer argument");
    }
    *out = summarize(&(*solution).inner).q0;
    PdsteadyStatus::Ok
}

/// Free a solution handle. Null is a no-op.
///
/// # Safety
/// `solution` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn pdsteady_solution_free(solution: *mut PdsteadySolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(pdsteady_last_error()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn solve_round_trip_through_the_abi() {
        unsafe {
            let params = pdsteady_params_default();
            assert!(!params.is_null());

            let mut solution = ptr::null_mut();
            let status =
                pdsteady_solve(params, PdsteadyCase::ConstantNu, 501, &mut solution);
            assert_eq!(status, PdsteadyStatus::Ok);
            let n = pdsteady_solution_len(solution);
            assert_eq!(n, 501);

            let mut u0 = f64::NAN;
            assert_eq!(
                pdsteady_solution_value(solution, PdsteadyColumn::U, 0, &mut u0),
                PdsteadyStatus::Ok
            );
            assert_eq!(u0, 1.0);

            let mut outflow = f64::NAN;
            assert_eq!(
                pdsteady_solution_outflow(solution, &mut outflow),
                PdsteadyStatus::Ok
            );
            assert!((outflow.abs() - 0.4714736336041007).abs() < 1e-4);

            let mut column = vec![0.0f64; n];
            assert_eq!(
                pdsteady_solution_column(
                    solution,
                    PdsteadyColumn::P,
                    column.as_mut_ptr(),
                    n
                ),
                PdsteadyStatus::Ok
            );
            assert!((column[0] - 1.0).abs() < 1e-10);

            let mut res = [0.0f64; 3];
            assert_eq!(
                pdsteady_solution_residuals(solution, res.as_mut_ptr()),
                PdsteadyStatus::Ok
            );
            assert!(res.iter().all(|r| r.is_finite()));

            pdsteady_solution_free(solution);
            pdsteady_params_free(params);
        }
    }

    #[test]
    fn set_get_and_error_reporting() {
        unsafe {
            let params = pdsteady_params_default();
            let name = CString::new("pa_a").unwrap();
            assert_eq!(
                pdsteady_params_set(params, name.as_ptr(), 2e-4),
                PdsteadyStatus::Ok
            );
            let mut value = 0.0;
            assert_eq!(
                pdsteady_params_get(params, name.as_ptr(), &mut value),
                PdsteadyStatus::Ok
            );
            assert_eq!(value, 2e-4);

            let bogus = CString::new("not_a_field").unwrap();
            assert_eq!(
                pdsteady_params_set(params, bogus.as_ptr(), 1.0),
                PdsteadyStatus::UnknownField
            );
            assert!(last_error().contains("not_a_field"));
            pdsteady_params_free(params);
        }
    }

    #[test]
    fn invalid_parameters_fail_the_solve() {
        unsafe {
            let params = pdsteady_params_default();
            let key = CString::new("c_gd").unwrap();
            pdsteady_params_set(params, key.as_ptr(), 0.006); // equals c_gb
            let mut solution = ptr::null_mut();
            assert_eq!(
                pdsteady_solve(params, PdsteadyCase::LinearNu, 0, &mut solution),
                PdsteadyStatus::SolveFailed
            );
            assert!(last_error().contains("nondimensionalization"));
            pdsteady_params_free(params);
        }
    }

    #[test]
    fn null_handles_are_rejected_not_dereferenced() {
        unsafe {
            let mut out = 0.0;
            assert_eq!(
                pdsteady_solution_outflow(ptr::null(), &mut out),
                PdsteadyStatus::NullPointer
            );
            assert_eq!(pdsteady_solution_len(ptr::null()), 0);
            assert_eq!(pdsteady_solution_warning_count(ptr::null()), 0);
            pdsteady_solution_free(ptr::null_mut());
            pdsteady_params_free(ptr::null_mut());
        }
    }

    #[test]
    fn out_of_range_index_reported() {
        unsafe {
            let params = pdsteady_params_default();
            let mut solution = ptr::null_mut();
            pdsteady_solve(params, PdsteadyCase::ConstantNu, 101, &mut solution);
            let mut out = 0.0;
            assert_eq!(
                pdsteady_solution_value(solution, PdsteadyColumn::X, 101, &mut out),
                PdsteadyStatus::OutOfRange
            );
            let mut buf = [0.0f64; 10];
            assert_eq!(
                pdsteady_solution_column(
                    solution,
                    PdsteadyColumn::X,
                    buf.as_mut_ptr(),
                    10
                ),
                PdsteadyStatus::OutOfRange
            );
            pdsteady_solution_free(solution);
            pdsteady_params_free(params);
        }
    }

    #[test]
    fn csv_export_writes_parseable_file() {
        unsafe {
            let params = pdsteady_params_default();
            let mut solution = ptr::null_mut();
            pdsteady_solve(params, PdsteadyCase::LinearNu, 101, &mut solution);
            let dir = std::env::temp_dir().join("pdsteady_ffi_test");
            std::fs::create_dir_all(&dir).unwrap();
            let path = dir.join("profiles.csv");
            let cpath = CString::new(path.to_str().unwrap()).unwrap();
            assert_eq!(
                pdsteady_solution_write_csv(solution, cpath.as_ptr()),
                PdsteadyStatus::Ok
            );
            let text = std::fs::read_to_string(&path).unwrap();
            assert!(text.starts_with("x,u,w,p,C_G,C_A,P,q_U,j_U"));
            assert_eq!(text.lines().count(), 102);
            pdsteady_solution_free(solution);
            pdsteady_params_free(params);
        }
    }
}
