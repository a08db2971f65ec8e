//! End-to-end replay of one induction step `d -> d+`.

use super::certificate::Certificate;
use crate::braid_cover::{
    arc_complement, genus_rh, lift_arc_system, select_spanning_order, tacnode_arcs, BranchData,
};
use crate::configurations::{
    assemblage_check, build_induction_config, route_generation, ConfigError, CoreKind,
};
use crate::numerology::Multidegree;
use crate::spin_core::{SurfaceSig, WindingState};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("r{0} = {1} is below 1: a base case, outside the induction")]
    OutOfScope(String, i64),
    #[error("branch data has {got} sheets, the step needs N = {expected}")]
    SheetCount { expected: usize, got: usize },
}

/// Zeros of a hyperplane section, `points` of them, spread over `disks` disks.
fn spread(points: usize, disks: usize) -> Vec<usize> {
    (0..disks)
        .map(|s| points / disks + usize::from(s < points % disks))
        .collect()
}

/// Replays the four steps of the induction for `d`, on the given cover of
/// the sphere or on the synthesized default.
pub fn induction_replay(
    d: &Multidegree,
    branch: Option<BranchData>,
    kind: CoreKind,
) -> Result<Certificate, ReplayError> {
    let r = d.r_index();
    if r < 1 {
        return Err(ReplayError::OutOfScope(d.to_string(), r));
    }
    let (plus, prime, sheets) = d.induction_data();
    let n = sheets as usize;
    if let Some(b) = &branch {
        if b.sheets() != n {
            return Err(ReplayError::SheetCount {
                expected: n,
                got: b.sheets(),
            });
        }
    }
    let g = d.genus() as usize;
    let g_plus = plus.genus() as usize;
    let g_prime = prime.genus() as usize;
    let r_plus = plus.r_index();

    let input = json!({
        "bd": d.degrees(),
        "type": kind,
        "branch": branch.as_ref().map_or(json!("synthesized"), |b| serde_json::to_value(b).expect("serializes")),
    });
    let mut cert = Certificate::new("replay", input);
    cert.check(
        "numerology",
        r_plus == r + 1 && g_plus == g + g_prime + n - 1,
        json!({
            "genus": g, "r": r, "sheets": n,
            "plus": {"degrees": plus.degrees(), "genus": g_plus, "r": r_plus},
            "prime": {"degrees": prime.degrees(), "genus": g_prime},
        }),
    );

    // Steps 1 and 2: the lifted core and its admissible attachments.
    let ind = match build_induction_config(g, r, n, kind) {
        Ok(ind) => ind,
        Err(e) => {
            cert.check("step1_core", false, e.to_string());
            return Ok(cert);
        }
    };
    match assemblage_check(&ind.config, g, 1) {
        Ok(report) => cert.check(
            "step1_core",
            report.ok && report.type_e && report.h == g,
            json!({"h": report.h, "type_e": report.type_e, "curves": 2 * g}),
        ),
        Err(e) => cert.check("step1_core", false, e.to_string()),
    }
    cert.check(
        "step2_attachments",
        ind.propagated.len() == n - 1
            && ind.boundary_windings.len() == n
            && ind.boundary_windings.iter().all(|&w| w == -r - 1),
        json!({
            "propagated": ind.propagated,
            "relocated": ind.relocated,
            "boundary_windings": ind.boundary_windings,
        }),
    );

    // Step 3: arcs lifted from the cover, tacnode curves, and routing.
    let branch = match branch.map_or_else(|| BranchData::synthesized(n, g_prime), Ok) {
        Ok(b) => b,
        Err(e) => {
            cert.check("step3_cover", false, e.to_string());
            return Ok(cert);
        }
    };
    let k = branch.branch_points();
    let cover_genus = genus_rh(&branch);
    cert.check(
        "step3_cover",
        cover_genus == Ok(g_prime),
        json!({"sheets": n, "branch_points": k, "genus": cover_genus.as_ref().map_err(|e| e.to_string())}),
    );
    let plan = select_spanning_order(&branch)
        .and_then(|order| Ok((lift_arc_system(&branch, &order)?, order)));
    let (system, order) = match plan {
        Ok(x) => x,
        Err(e) => {
            cert.check("step3_arcs", false, e.to_string());
            return Ok(cert);
        }
    };
    cert.check(
        "step3_arcs",
        system.complement_disks == n,
        json!({
            "order": order.order,
            "euler": system.stages.iter().map(|s| s.euler).collect::<Vec<_>>(),
            "complement_disks": system.complement_disks,
        }),
    );
    let arcs = match tacnode_arcs(&branch, &order) {
        Ok(a) => a,
        Err(e) => {
            cert.check("step3_tacnode_arcs", false, e.to_string());
            return Ok(cert);
        }
    };
    let enter_once: Vec<bool> = arcs.iter().map(|a| a.enters_once).collect();
    let complement = arc_complement(&branch, &arcs);
    let disks = complement.as_ref().map_or(0, |c| c.pieces);
    cert.check(
        "step3_tacnode_arcs",
        enter_once.iter().all(|&b| b) && complement.as_ref().is_ok_and(|c| c.all_disks),
        json!({"arcs": arcs.len(), "complement": complement.as_ref().map_err(|e| e.to_string())}),
    );
    // Each arc attaches one handle to C~; capping the complement gives E.
    let sub_euler = 2 - 2 * g as i64 - n as i64 - k as i64;
    let sub_genus = (2 - sub_euler - disks as i64) / 2;
    cert.check(
        "step3_subsurface",
        sub_euler + disks as i64 == 2 - 2 * g_plus as i64 && sub_genus == g_plus as i64,
        json!({"euler": sub_euler, "boundaries": disks, "genus": sub_genus, "ambient_genus": g_plus}),
    );
    match route_generation(g, &ind.config, g_plus, &enter_once) {
        Ok(routing) => cert.check(
            "step3_routing",
            true,
            json!({"criterion": routing.criterion, "h": routing.h, "checklist": routing.checklist}),
        ),
        Err(ConfigError::NoCriterion(list)) => {
            cert.check("step3_routing", false, json!({"checklist": list}))
        }
        Err(e) => cert.check("step3_routing", false, e.to_string()),
    }

    // Step 4: from the framing of E° to the r(d+)-spin structure on E.
    let zeros = spread(plus.product() as usize, n);
    let boundary: Vec<i64> = zeros.iter().map(|&m| -1 - r_plus * m as i64).collect();
    let state = SurfaceSig::new(g_plus, n, 0)
        .and_then(|sig| WindingState::standard(sig, &vec![0; 2 * g_plus], &boundary));
    let state = match state {
        Ok(s) => s,
        Err(e) => {
            cert.check("step4_rho", false, e.to_string());
            return Ok(cert);
        }
    };
    let rho = state.signature_gcd().unwrap_or(0);
    cert.check(
        "step4_rho",
        rho != 0 && rho % r_plus == 0,
        json!({"rho": rho, "r_plus": r_plus, "zeros": zeros, "boundary_values": boundary}),
    );
    let direct = state.reduce_mod(r_plus);
    let via_rho = state.reduce_mod(rho).and_then(|s| s.reduce_mod(r_plus));
    let caps = direct
        .as_ref()
        .map(|s| s.boundary_values())
        .unwrap_or_default();
    cert.check(
        "step4_reduction",
        direct.is_ok() && direct == via_rho && caps.iter().all(|&v| v == r_plus - 1),
        json!({"reduced_boundary_values": caps}),
    );
    let beta = ind.boundary_windings[0];
    cert.check(
        "step4_boundary_curve",
        beta.abs() == r_plus,
        json!({"curve": "beta1", "winding": beta, "r_plus": r_plus}),
    );
    Ok(cert)
}
