mod support;

use proptest::prelude::*;
use support::{grid_elements, oracle_sector, H, W};
use walkthrough_core::matching::{sector_label, SectorLabel};
use walkthrough_core::Bounds;

#[test]
fn full_width_top_bar_is_the_top_left_corner() {
    let label = sector_label(Bounds::new(0, 0, W, 200), W, H).unwrap();
    assert_eq!(label, SectorLabel::TopLeftCorner);
    assert_eq!(label.to_string(), "top left corner");
}

#[test]
fn single_cells_get_their_own_name() {
    let (tw, th) = (W / 3, H / 3);
    for (col, row, label) in [
        (0, 0, "top left corner"),
        (1, 0, "top edge"),
        (2, 0, "top right corner"),
        (0, 1, "left edge"),
        (1, 1, "center"),
        (2, 1, "right edge"),
        (0, 2, "bottom left corner"),
        (1, 2, "bottom edge"),
        (2, 2, "bottom right corner"),
    ] {
        let b = Bounds::new(col * tw + 10, row * th + 10, (col + 1) * tw - 10, (row + 1) * th - 10);
        assert_eq!(sector_label(b, W, H).unwrap().phrase(), label);
    }
}

#[test]
fn band_edges_are_half_open() {
    // an element ending exactly on the first vertical third line stays in column 0
    let b = Bounds::new(W / 3 - 50, H / 3, W / 3, H / 3 + 50);
    assert_eq!(sector_label(b, W, H).unwrap(), SectorLabel::LeftEdge);
    let b = Bounds::new(W / 3, H / 3, W / 3 + 50, H / 3 + 50);
    assert_eq!(sector_label(b, W, H).unwrap(), SectorLabel::Center);
}

#[test]
fn grid_agrees_with_cell_intersection() {
    let elements = grid_elements();
    assert_eq!(elements.len(), 2500);
    for b in elements {
        assert_eq!(sector_label(b, W, H).unwrap(), oracle_sector(b, W, H), "{b:?}");
    }
}

#[test]
fn off_screen_and_inverted_bounds_are_errors() {
    assert!(sector_label(Bounds::new(0, 0, W + 1, 10), W, H).is_err());
    assert!(sector_label(Bounds::new(-1, 0, 10, 10), W, H).is_err());
    assert!(sector_label(Bounds::new(10, 10, 5, 20), W, H).is_err());
    assert!(sector_label(Bounds::new(0, 0, 10, 10), 0, H).is_err());
}

proptest! {
    #[test]
    fn any_on_screen_element_matches_the_reference(
        w in 3i32..2000, h in 3i32..3000,
        a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0, d in 0.0f64..1.0,
    ) {
        let (x0, x1) = ((a.min(b) * w as f64) as i32, (a.max(b) * w as f64) as i32);
        let (y0, y1) = ((c.min(d) * h as f64) as i32, (c.max(d) * h as f64) as i32);
        let bounds = Bounds::new(x0, y0, x1.max(x0 + 1).min(w), y1.max(y0 + 1).min(h));
        prop_assume!(bounds.left < bounds.right && bounds.top < bounds.bottom);
        prop_assert_eq!(sector_label(bounds, w, h).unwrap(), oracle_sector(bounds, w, h));
    }
}
