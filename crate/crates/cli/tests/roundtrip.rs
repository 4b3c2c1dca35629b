use pinlef_cli::{parse, serialize, InputDocument, ThreefoldBlock};
use pinlef_core::finite_linalg::VecGF2;
use pinlef_core::{EmbeddedSurfaceData, Orientability, Surface, SurfaceModel};
use proptest::prelude::*;

fn model() -> impl Strategy<Value = SurfaceModel> {
    prop_oneof![
        (0u32..=3, 0u32..=3).prop_map(|(g, b)| SurfaceModel::orientable(g, b)),
        (1u32..=5, 0u32..=3).prop_map(|(k, b)| SurfaceModel::non_orientable(k, b).unwrap()),
    ]
}

/// Rows with even self-intersection on `model`.
fn two_sided_rows(model: SurfaceModel, max: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    let surface = Surface::new(model);
    let r = model.z2_rank();
    proptest::collection::vec(proptest::collection::vec(0u8..4, r), 0..=max).prop_map(move |rows| {
        rows.into_iter()
            .filter(|row| !surface.self_intersection(&VecGF2::from_residues(row)))
            .collect()
    })
}

fn threefold() -> impl Strategy<Value = (SurfaceModel, ThreefoldBlock)> {
    (1u32..=2).prop_flat_map(|g| {
        let model = SurfaceModel::non_orientable(2 * g, 0).unwrap();
        let even_row = proptest::collection::vec(0u8..4, 2 * g as usize).prop_map(|mut v| {
            if v.iter().filter(|&&e| e % 2 == 1).count() % 2 == 1 {
                v[0] = (v[0] + 1) % 4;
            }
            v
        });
        let rows = proptest::collection::vec(even_row, 2 * g as usize);
        rows.prop_map(move |mut rows| {
            let belt = rows.split_off(g as usize);
            (
                model,
                ThreefoldBlock {
                    genus: g,
                    attaching: rows,
                    belt,
                },
            )
        })
    })
}

fn embedded() -> impl Strategy<Value = Vec<EmbeddedSurfaceData>> {
    proptest::collection::vec(
        proptest::array::uniform5(0u8..2).prop_map(|v| EmbeddedSurfaceData::from_residues(v).unwrap()),
        0..3,
    )
}

fn document() -> impl Strategy<Value = InputDocument> {
    let fibration =
        model().prop_flat_map(|m| proptest::option::of(two_sided_rows(m, 4)).prop_map(move |cycles| (m, cycles)));
    prop_oneof![
        (fibration, embedded()).prop_map(|((surface, cycles), embedded)| InputDocument {
            surface,
            cycles,
            threefold: None,
            embedded,
        }),
        (threefold(), embedded()).prop_flat_map(|((surface, t), embedded)| {
            proptest::option::of(two_sided_rows(surface, 3)).prop_map(move |cycles| InputDocument {
                surface,
                cycles,
                threefold: Some(t.clone()),
                embedded: embedded.clone(),
            })
        }),
    ]
}

proptest! {
    #[test]
    fn parse_inverts_serialize(doc in document()) {
        let text = serialize(&doc);
        let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(serialize(&parsed), text);
    }
}

#[test]
fn comments_and_spacing_do_not_matter() {
    let messy = "  # header\n[surface]   # the fiber\nkind=orientable\n  genus =1\n\n[cycles]\ncycle= 1 ,0 # a\n";
    let doc = parse(messy).unwrap();
    assert_eq!(doc.surface.orientability(), Orientability::Orientable);
    assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
}
