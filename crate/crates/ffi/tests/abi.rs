use std::ffi::{CStr, CString};
use std::ptr;

use vcst_ffi::*;

fn last_error() -> String {
    let p = vcst_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

/// Path 0 - 1 - 2 - 3 with terminals at both ends; the middle pair covers it.
fn path() -> *mut VcstInstance {
    let w = [5_000_000i64, 1_000_000, 1_000_000, 5_000_000];
    let e = [0usize, 1, 1, 2, 2, 3];
    let t = [0usize, 3];
    let mut inst = ptr::null_mut();
    let s = unsafe { vcst_instance_new(4, w.as_ptr(), 3, e.as_ptr(), 2, t.as_ptr(), &mut inst) };
    assert_eq!(s, VcstStatus::Ok);
    inst
}

#[test]
fn solve_from_arrays() {
    let inst = path();
    assert_eq!(unsafe { vcst_instance_vertex_count(inst) }, 4);
    let mut opts = vcst_solve_options_default();
    opts.compute_opt = true;
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { vcst_solve(inst, &opts, &mut sol) }, VcstStatus::Ok);

    let mut obj = 0i64;
    assert_eq!(
        unsafe { vcst_solution_objective(sol, &mut obj) },
        VcstStatus::Ok
    );
    assert_eq!(obj, 2 * VCST_WEIGHT_SCALE);
    let (mut opt, mut have) = (0i64, false);
    assert_eq!(
        unsafe { vcst_solution_optimum(sol, &mut opt, &mut have) },
        VcstStatus::Ok
    );
    assert!(have);
    assert_eq!(opt, obj);
    assert!(unsafe { vcst_solution_certified(sol) });
    assert!(unsafe { vcst_solution_wall_ms(sol) } >= 0.0);

    let mut buf = [0usize; 6];
    let mut len = buf.len();
    assert_eq!(
        unsafe { vcst_solution_tree_edges(sol, buf.as_mut_ptr(), &mut len) },
        VcstStatus::Ok
    );
    assert_eq!(&buf[..len], &[0, 1, 1, 2, 2, 3]);
    let mut len = buf.len();
    assert_eq!(
        unsafe { vcst_solution_vertices(sol, buf.as_mut_ptr(), &mut len) },
        VcstStatus::Ok
    );
    assert_eq!(&buf[..len], &[1, 2]);

    unsafe {
        vcst_solution_free(sol);
        vcst_instance_free(inst);
    }
}

#[test]
fn small_buffer_reports_needed_length() {
    let inst = path();
    let mut sol = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_solve(inst, ptr::null(), &mut sol) },
        VcstStatus::Ok
    );
    let mut buf = [0usize; 2];
    let mut len = buf.len();
    let s = unsafe { vcst_solution_tree_edges(sol, buf.as_mut_ptr(), &mut len) };
    assert_eq!(s, VcstStatus::BufferTooSmall);
    assert_eq!(len, 6);
    unsafe {
        vcst_solution_free(sol);
        vcst_instance_free(inst);
    }
}

#[test]
fn json_round_trip() {
    let inst = path();
    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_instance_to_json(inst, &mut text) },
        VcstStatus::Ok
    );
    let mut again = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_instance_from_json(text, &mut again) },
        VcstStatus::Ok
    );
    let mut text2 = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_instance_to_json(again, &mut text2) },
        VcstStatus::Ok
    );
    assert_eq!(unsafe { CStr::from_ptr(text) }, unsafe {
        CStr::from_ptr(text2)
    });

    let mut sol = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_solve(again, ptr::null(), &mut sol) },
        VcstStatus::Ok
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_solution_to_json(sol, &mut out) },
        VcstStatus::Ok
    );
    let json: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    assert_eq!(json["objective"], "2");
    unsafe {
        vcst_string_free(out);
        vcst_string_free(text);
        vcst_string_free(text2);
        vcst_solution_free(sol);
        vcst_instance_free(inst);
        vcst_instance_free(again);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut inst = ptr::null_mut();
    let bad = CString::new("{\"schema\": 1").unwrap();
    assert_eq!(
        unsafe { vcst_instance_from_json(bad.as_ptr(), &mut inst) },
        VcstStatus::Parse
    );
    assert!(inst.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(
        unsafe { vcst_instance_from_json(ptr::null(), &mut inst) },
        VcstStatus::InvalidArgument
    );

    let w = [1_000_000i64, -7];
    let mut out = ptr::null_mut();
    let s = unsafe {
        vcst_instance_new(
            2,
            w.as_ptr(),
            0,
            ptr::null(),
            1,
            [0usize].as_ptr(),
            &mut out,
        )
    };
    assert_eq!(s, VcstStatus::InvalidArgument);
    assert!(last_error().contains("negative"));

    // Terminals 0 and 2 with no path between them.
    let w = [1_000_000i64; 3];
    let e = [0usize, 1];
    let t = [0usize, 2];
    let s = unsafe { vcst_instance_new(3, w.as_ptr(), 1, e.as_ptr(), 2, t.as_ptr(), &mut out) };
    assert_eq!(s, VcstStatus::Ok);
    let mut sol = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_solve(out, ptr::null(), &mut sol) },
        VcstStatus::Infeasible
    );

    let mut opts = vcst_solve_options_default();
    opts.algorithm = VcstAlgorithm::CdsSpanning;
    assert_eq!(
        unsafe { vcst_solve(out, &opts, &mut sol) },
        VcstStatus::WrongVariant
    );
    unsafe { vcst_instance_free(out) };

    let name = unsafe { CStr::from_ptr(vcst_status_name(VcstStatus::Infeasible)) };
    assert_eq!(name.to_str().unwrap(), "infeasible");
}

#[test]
fn infinite_weights_pass_through() {
    let w = [0i64, VCST_INFINITE_WEIGHT, 3_000_000, 0];
    let e = [0usize, 1, 1, 3, 0, 2, 2, 3];
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe {
            vcst_instance_new(
                4,
                w.as_ptr(),
                4,
                e.as_ptr(),
                2,
                [0usize, 3].as_ptr(),
                &mut inst,
            )
        },
        VcstStatus::Ok
    );
    let mut sol = ptr::null_mut();
    assert_eq!(
        unsafe { vcst_solve(inst, ptr::null(), &mut sol) },
        VcstStatus::Ok
    );
    let mut obj = 0;
    unsafe { vcst_solution_objective(sol, &mut obj) };
    assert_eq!(
        obj, 0,
        "the zero-weight terminals cover the route through 2"
    );
    unsafe {
        vcst_solution_free(sol);
        vcst_instance_free(inst);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        vcst_instance_free(ptr::null_mut());
        vcst_solution_free(ptr::null_mut());
        vcst_string_free(ptr::null_mut());
        assert_eq!(vcst_instance_vertex_count(ptr::null()), 0);
        assert!(!vcst_solution_certified(ptr::null()));
    }
    let v = unsafe { CStr::from_ptr(vcst_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
