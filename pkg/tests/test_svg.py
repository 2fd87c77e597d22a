import xml.etree.ElementTree as ET

from framelens import svg


def parse(content: str) -> ET.Element:
    root = ET.fromstring(content)
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    assert root.get("width") == "960" and root.get("height") == "540"
    return root


def test_shift_chart_structure():
    rows = [
        {"token": "delicious", "shift_target": 0.01, "shift_background": 0.002,
         "shift_delta": 0.008},
        {"token": "bland", "shift_target": -0.004, "shift_background": 0.001,
         "shift_delta": -0.005},
    ]
    content = svg.chart_shifts(rows, "demo shifts")
    root = parse(content)
    texts = [t.text for t in root.iter("{http://www.w3.org/2000/svg}text")]
    assert "delicious" in texts and "bland" in texts
    # 3 bars per token plus background and legend swatches
    rects = root.findall("{http://www.w3.org/2000/svg}rect")
    assert len(rects) >= 2 * 3


def test_shift_chart_empty():
    parse(svg.chart_shifts([], "empty"))


def test_spectrum_chart_groups_and_means():
    rows = [
        {"doc_id": "a", "group": "pos", "doc_bias": 0.2},
        {"doc_id": "b", "group": "pos", "doc_bias": 0.4},
        {"doc_id": "c", "group": "neg", "doc_bias": -0.3},
        {"doc_id": "d", "group": None, "doc_bias": None},
    ]
    content = svg.chart_spectrum(rows, "demo spectrum", "bad", "good")
    parse(content)
    assert "pos mean 0.3" in content
    assert "neg mean -0.3" in content
    assert "toward bad" in content and "toward good" in content


def test_map_chart_units():
    rows = [
        {"unit": "sun", "group": "left", "n_docs": 30, "bias": 0.2, "intensity": 0.5},
        {"unit": "moon", "group": "right", "n_docs": 25, "bias": -0.1, "intensity": 0.8},
    ]
    content = svg.chart_map(rows, "demo map", "bad", "good")
    parse(content)
    assert "sun" in content and "moon" in content


def test_separation_chart_labels_best_frames():
    rows = []
    for i in range(10):
        rows.append(
            {
                "frame_id": f"neg{i}--pos{i}",
                "delta_bias": (i - 5) / 10.0,
                "delta_intensity": (5 - i) / 20.0,
                "bias_a": 0.1 if i % 2 == 0 else -0.1,
                "bias_b": -0.1,
            }
        )
    content = svg.chart_separation(rows, "demo separation")
    parse(content)
    assert 'font-weight="bold"' in content
    assert 'baseline-shift="super"' in content


def test_separation_label_rule():
    # group A uses the frame more; its bias points at the positive pole
    row = {"frame_id": "bad--good", "delta_intensity": 0.5, "bias_a": 0.3, "bias_b": -0.2}
    prefix, bold, sup, suffix, color = svg._separation_label(row)
    assert (prefix, bold, sup, suffix) == ("bad--", "good", "+", "")
    assert color == svg.COLOR_A
    # group B uses it more; B's bias points at the negative pole
    row = {"frame_id": "bad--good", "delta_intensity": -0.5, "bias_a": 0.3, "bias_b": -0.2}
    prefix, bold, sup, suffix, color = svg._separation_label(row)
    assert (prefix, bold, sup, suffix) == ("", "bad", "-", "--good")
    assert color == svg.COLOR_B
    # balanced within epsilon
    row = {"frame_id": "bad--good", "delta_intensity": 0.0, "bias_a": 0.3, "bias_b": -0.2}
    prefix, bold, sup, suffix, color = svg._separation_label(row)
    assert "balanced" in prefix
    assert color == svg.COLOR_NEUTRAL


def test_group_color_assignment_is_stable():
    colors = svg.group_colors(["zeta", "alpha"])
    assert colors["alpha"] == svg.COLOR_A
    assert colors["zeta"] == svg.COLOR_B
