use vgraph::connectivity::proof_paths;
use vgraph::generators::{gen_venn, gen_venn3, gen_weave};
use vgraph::hamilton::find_hamilton;
use vgraph::render::{barycentric, layout, render_svg, RenderError, RenderOptions};
use vgraph::PlaneGraph;

fn strip_coords(g: &PlaneGraph) -> PlaneGraph {
    g.clone().with_coords(vec![None; g.vertex_count()])
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}")).count()
}

#[test]
fn venn3_drawing_has_one_path_per_edge() {
    let g = gen_venn3();
    let svg = render_svg(
        &g,
        &RenderOptions {
            face_labels: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(count(&svg, "edge"), g.edge_count());
    for c in 0..3 {
        assert_eq!(count(&svg, &format!("edge curve-{c}\"")), 4);
    }
    assert_eq!(count(&svg, "face-label"), 8);
    for label in ["000", "001", "010", "100", "011", "101", "110", "111"] {
        assert!(svg.contains(&format!(">{label}</text>")), "{label}");
    }
}

#[test]
fn hamilton_overlay_has_v_segments() {
    let g = gen_venn(4).unwrap();
    let cycle = find_hamilton(g.adjacency()).unwrap();
    let svg = render_svg(
        &g,
        &RenderOptions {
            hamilton: Some(cycle.order),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(count(&svg, "hamilton\""), g.vertex_count());
    assert_eq!(count(&svg, "edge"), g.edge_count());
}

#[test]
fn path_overlay() {
    let g = gen_venn(4).unwrap();
    let pair = &g.distance2_pairs()[0];
    let r = proof_paths(&g, pair.u, pair.witnesses[0], pair.v).unwrap();
    let svg = render_svg(
        &g,
        &RenderOptions {
            paths: r.paths.into_iter().map(|p| p.vertices).collect(),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(count(&svg, "cert-path"), 4);
}

#[test]
fn weave_without_coords_has_no_layout() {
    let g = strip_coords(&gen_weave(3).unwrap());
    assert_eq!(layout(&g), Err(RenderError::LayoutUnavailable(2)));
    assert!(render_svg(&g, &RenderOptions::default()).is_err());
}

#[test]
fn barycentric_layout_balances_interior_vertices() {
    let g = strip_coords(&gen_venn(4).unwrap());
    let pos = layout(&g).unwrap();
    assert_eq!(pos, barycentric(&g).unwrap());
    let outer: Vec<usize> = g.faces()[g.face_of(g.outer().unwrap())]
        .vertices()
        .collect();
    let adj = g.adjacency();
    for v in 0..g.vertex_count() {
        let p = pos[v];
        if outer.contains(&v) {
            assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-12);
            continue;
        }
        let nb = adj.neighbors(v);
        let cx = nb.iter().map(|&w| pos[w].x).sum::<f64>() / nb.len() as f64;
        let cy = nb.iter().map(|&w| pos[w].y).sum::<f64>() / nb.len() as f64;
        assert!((cx - p.x).abs() < 1e-8 && (cy - p.y).abs() < 1e-8);
    }
}

#[test]
fn extended_diagram_renders_without_coords() {
    let g = gen_venn(5).unwrap();
    assert!(g.full_coords().is_none());
    let svg = render_svg(&g, &RenderOptions::default()).unwrap();
    assert_eq!(count(&svg, "edge"), g.edge_count());
}
