use std::fmt::Write;

use crate::model::{Channel, Persistence, ServiceModel, Trigger, OUTSIDE, PUBLIC};

/// Renders a well-formed model as canonical text: fixed section order, each
/// section's lines sorted, one declaration per line, defaults omitted.
pub fn serialize(model: &ServiceModel) -> String {
    let mut entities: Vec<String> = model
        .declared_entities()
        .map(|e| {
            let role = if e.is_role { " role" } else { "" };
            format!("entity {} kind={}{role}", e.name, e.kind)
        })
        .collect();

    let mut pii: Vec<String> = model
        .pii_items
        .iter()
        .map(|p| {
            let mut line = format!("pii {} of {} resolvability={}", p.name, p.subject, p.resolvability);
            if p.persistence != Persistence::Persistent {
                let _ = write!(line, " persistence={}", p.persistence);
            }
            if !p.record_holders.is_empty() {
                let mut holders = p.record_holders.clone();
                holders.sort();
                let _ = write!(line, " record_holder={}", holders.join(","));
            }
            if p.authority_managed {
                line.push_str(" authority_managed");
            }
            line
        })
        .collect();

    let mut exposures: Vec<String> = model
        .exposures
        .iter()
        .map(|x| {
            let observer = match x.observer.as_str() {
                PUBLIC => "public",
                OUTSIDE => "outside",
                other => other,
            };
            let mut line = format!("observes {observer} {} form={}", x.pii, x.form);
            if x.when != Trigger::Always {
                let _ = write!(line, " when={}", x.when);
            }
            if x.via != Channel::Data {
                let _ = write!(line, " via={}", x.via);
            }
            line
        })
        .collect();

    let mut attachments: Vec<String> = model
        .attachments
        .iter()
        .map(|a| format!("attach {} to_ioi form={} recoverable_on={}", a.pii, a.form, a.recoverable_on))
        .collect();

    let mut out = format!("service {} {{\n", quote(&model.name));
    for section in [&mut entities, &mut pii, &mut exposures, &mut attachments] {
        section.sort();
        for line in section.iter() {
            let _ = writeln!(out, "  {line}");
        }
    }
    if let Some(g) = &model.group_scheme {
        let _ = write!(
            out,
            "  group_scheme {{ operates_on_groups={} group_authentication={} acts_on_behalf={}",
            g.operates_on_groups, g.group_authentication, g.acts_on_behalf
        );
        if let Some(manager) = &g.manager {
            let _ = write!(out, " manager={manager}");
        }
        out.push_str(" }\n");
    }
    out.push_str("}\n");
    out
}

fn quote(text: &str) -> String {
    let mut quoted = String::with_capacity(text.len() + 2);
    quoted.push('"');
    for c in text.chars() {
        match c {
            '"' => quoted.push_str("\\\""),
            '\\' => quoted.push_str("\\\\"),
            '\n' => quoted.push_str("\\n"),
            '\t' => quoted.push_str("\\t"),
            c => quoted.push(c),
        }
    }
    quoted.push('"');
    quoted
}
