//! The shipped fixture corpus, built in code. `cargo run --example
//! build_fixtures` writes it under `fixtures/`; a test checks the files
//! on disk still match.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use walkthrough_core::model::Capability;
use walkthrough_core::sim::{run_episode, Agent, Condition, NavAction, Policy};
use walkthrough_core::{ActionKind, ActionType, AppGraph, Bounds, NodeId, ScreenTree, TaskPackage, TaskRequest, ViewNode};

use crate::corpus::{app_path, task_path, trace_path, ALL_TASKS};
use crate::formats::{self, FormatError};
use crate::script::{run_script, AuthoringCommand, AuthoringScript};

const W: i32 = 1080;
const H: i32 = 1920;

const BUTTON: &str = "android.widget.Button";
const IMAGE_BUTTON: &str = "android.widget.ImageButton";
const IMAGE_VIEW: &str = "android.widget.ImageView";
const TEXT_VIEW: &str = "android.widget.TextView";
const EDIT_TEXT: &str = "android.widget.EditText";
const RADIO: &str = "android.widget.RadioButton";
const SWITCH: &str = "android.widget.Switch";
const CHECKED_TEXT: &str = "android.widget.CheckedTextView";
const FRAME: &str = "android.widget.FrameLayout";
const LINEAR: &str = "android.widget.LinearLayout";
const RECYCLER: &str = "androidx.recyclerview.widget.RecyclerView";

/// Node factory for one app package.
struct Ui {
    pkg: &'static str,
}

fn b(l: i32, t: i32, r: i32, bo: i32) -> Bounds {
    Bounds::new(l, t, r, bo)
}

impl Ui {
    fn node(&self, id: &str, class: &str, bounds: Bounds) -> ViewNode {
        ViewNode::new(id, class, self.pkg, bounds)
    }

    fn tappable(&self, id: &str, class: &str, bounds: Bounds) -> ViewNode {
        self.node(id, class, bounds).capability(Capability::Clickable).capability(Capability::Focusable)
    }

    fn button(&self, id: &str, text: &str, bounds: Bounds) -> ViewNode {
        self.tappable(id, BUTTON, bounds).text(text)
    }

    fn icon(&self, id: &str, cd: &str, bounds: Bounds) -> ViewNode {
        self.tappable(id, IMAGE_BUTTON, bounds).description(cd)
    }

    /// Clickable list row.
    fn row(&self, id: &str, text: &str, bounds: Bounds) -> ViewNode {
        self.tappable(id, TEXT_VIEW, bounds).text(text)
    }

    /// Static text the screen reader still stops on.
    fn label(&self, id: &str, text: &str, bounds: Bounds) -> ViewNode {
        self.node(id, TEXT_VIEW, bounds).text(text).capability(Capability::Focusable)
    }

    fn field(&self, id: &str, hint: &str, bounds: Bounds) -> ViewNode {
        self.node(id, EDIT_TEXT, bounds)
            .description(hint)
            .capability(Capability::Editable)
            .capability(Capability::Focusable)
    }

    /// Tab whose label sits on a plain child text view.
    fn tab(&self, id: &str, text: &str, bounds: Bounds) -> ViewNode {
        self.tappable(id, FRAME, bounds).child(self.node(&format!("{id}_label"), TEXT_VIEW, bounds).text(text))
    }

    fn group(&self, id: &str, class: &str, bounds: Bounds, children: Vec<ViewNode>) -> ViewNode {
        self.node(id, class, bounds).with_children(children)
    }

    /// Rows stacked from `top`, `height` pixels each.
    fn rows(&self, prefix: &str, labels: &[&str], top: i32, height: i32) -> Vec<ViewNode> {
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let t = top + i as i32 * height;
                self.row(&format!("{prefix}{i}"), l, b(0, t, W, t + height))
            })
            .collect()
    }

    /// Bottom navigation bar with equal-width tabs.
    fn nav(&self, tabs: &[(&str, &str)]) -> ViewNode {
        let w = W / tabs.len() as i32;
        let items = tabs
            .iter()
            .enumerate()
            .map(|(i, (id, text))| self.tab(id, text, b(i as i32 * w, 1760, (i as i32 + 1) * w, H)))
            .collect();
        self.group("bottom_nav", LINEAR, b(0, 1760, W, H), items)
    }

    fn screen(&self, id: &str, title: &str, activity: &str, children: Vec<ViewNode>) -> ScreenTree {
        ScreenTree {
            screen_id: id.into(),
            title: title.into(),
            activity: activity.into(),
            package_name: self.pkg.into(),
            screen_width: W,
            screen_height: H,
            root: self.group("root", FRAME, b(0, 0, W, H), children),
        }
    }

    fn up(&self) -> ViewNode {
        self.icon("navigate_up", "Navigate up", b(0, 60, 140, 200))
    }
}

/// Builder for authoring commands.
#[derive(Default)]
struct Trace(Vec<AuthoringCommand>);

impl Trace {
    fn screen(mut self, description: &str) -> Self {
        self.0.push(AuthoringCommand::Describe { text: description.into() });
        self.0.push(AuthoringCommand::Review { accept: true });
        self
    }

    fn act(mut self, node: &str, action: ActionKind) -> Self {
        self.0.push(AuthoringCommand::Act { node: NodeId::from(node), action });
        self
    }

    fn click(self, node: &str) -> Self {
        self.act(node, ActionKind::Click)
    }

    fn type_text(self, node: &str, value: &str) -> Self {
        self.act(node, ActionKind::set_text(value))
    }

    fn scroll(self, node: &str) -> Self {
        self.act(node, ActionKind::ScrollForward)
    }

    fn prompts(mut self, prompts: &[&str]) -> Self {
        self.0.push(AuthoringCommand::Prompts { prompts: prompts.iter().map(|p| p.to_string()).collect() });
        self
    }

    fn finish(mut self, app_id: &str, task_id: &str, title: &str, description: &str) -> AuthoringScript {
        self.0.push(AuthoringCommand::Finalize { title: Some(title.into()), description: Some(description.into()) });
        AuthoringScript {
            app_id: app_id.into(),
            task_id: Some(task_id.into()),
            author_id: "author-01".into(),
            commands: self.0,
        }
    }
}

fn contacts() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.android.contacts" };
    let people = ["Ana Costa", "Bruno Dias", "Carla Mendes", "Diogo Alves", "Eva Rocha", "Filipe Nunes", "Gil Teixeira"];
    let mut app = AppGraph::new("contacts", ui.pkg, "contacts_list");
    app.add_screen(ui.screen("contacts_list", "Contacts", "PeopleActivity", vec![
        ui.icon("open_drawer", "Open navigation drawer", b(0, 60, 140, 200)),
        ui.icon("search", "Search contacts", b(800, 60, 940, 200)),
        ui.icon("more", "More options", b(940, 60, W, 200)),
        ui.group("contact_list", RECYCLER, b(0, 200, W, 1700), ui.rows("contact_", &people, 220, 160)),
        ui.icon("fab", "Create Contact", b(880, 1700, 1040, 1860)),
    ]));
    app.add_screen(ui.screen("account_chooser", "Save contact to", "PeopleActivity", vec![
        ui.label("chooser_title", "Save contact to", b(100, 650, 980, 780)),
        ui.button("google", "Google account", b(100, 800, 980, 950)),
        ui.button("device", "Device", b(100, 950, 980, 1100)),
        ui.button("cancel", "Cancel", b(600, 1150, 980, 1280)),
    ]));
    app.add_screen(ui.screen("editor", "Create contact", "ContactEditorActivity", vec![
        ui.up(),
        ui.label("editor_title", "Create contact", b(160, 60, 700, 200)),
        ui.button("save", "Save", b(860, 60, W, 200)),
        ui.icon("add_photo", "Add picture", b(390, 240, 690, 540)),
        ui.field("name", "Name", b(40, 600, 1040, 720)),
        ui.field("phone", "Phone", b(40, 760, 1040, 880)),
        ui.field("email", "Email", b(40, 920, 1040, 1040)),
        ui.button("more_fields", "More fields", b(40, 1100, 500, 1220)),
    ]));
    app.add_screen(ui.screen("contact_saved", "Contact", "QuickContactActivity", vec![
        ui.up(),
        ui.icon("star", "Add to favorites", b(800, 60, 940, 200)),
        ui.icon("edit", "Edit contact", b(940, 60, W, 200)),
        ui.label("contact_name", "Brenda Silva", b(40, 600, 1040, 720)),
        ui.icon("call", "Call", b(100, 800, 300, 1000)),
        ui.icon("message", "Send message", b(440, 800, 640, 1000)),
    ]));
    app.add_screen(ui.screen("contact_detail", "Contact", "QuickContactActivity", vec![
        ui.up(),
        ui.icon("star", "Add to favorites", b(800, 60, 940, 200)),
        ui.label("contact_name", "Ana Costa", b(40, 600, 1040, 720)),
        ui.icon("call", "Call", b(100, 800, 300, 1000)),
    ]));
    app.add_transition("contacts_list", "fab", ActionType::Click, "account_chooser")
        .add_transition("contacts_list", "contact_0", ActionType::Click, "contact_detail")
        .add_transition("contact_detail", "navigate_up", ActionType::Click, "contacts_list")
        .add_transition("account_chooser", "google", ActionType::Click, "editor")
        .add_transition("account_chooser", "device", ActionType::Click, "editor")
        .add_transition("account_chooser", "cancel", ActionType::Click, "contacts_list")
        .add_transition("editor", "navigate_up", ActionType::Click, "contacts_list")
        .add_transition("editor", "save", ActionType::Click, "contact_saved")
        .add_transition("contact_saved", "navigate_up", ActionType::Click, "contacts_list")
        .add_transition("contact_saved", "edit", ActionType::Click, "editor")
        .add_edit_effect("editor", "name", "contact name")
        .add_edit_effect("editor", "phone", "phone number")
        .add_edit_effect("editor", "email", "email address");
    let script = Trace::default()
        .screen("Your contacts list. The button to create a contact is at the bottom right.")
        .click("fab")
        .screen("A dialog asking where to save the contact, with the options listed in the middle.")
        .click("device")
        .screen("The contact form. Fields for name, phone and email, with Save at the top right.")
        .type_text("name", "Brenda Silva")
        .type_text("phone", "912 345 678")
        .click("save")
        .prompts(&["the new contact name", "the contact number"])
        .screen("The saved contact. Navigate up is at the top left.")
        .click("navigate_up")
        .finish("contacts", "tt1", "Add new contact", "Create a contact with a name and a phone number, stored on the device.");
    (app, script)
}

fn contacts_favorites() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.android.contacts" };
    let people = [
        "Ana Costa", "Bruno Dias", "Carla Mendes", "Diogo Alves", "Eva Rocha", "Filipe Nunes", "Helena Ramos", "John Smith",
        "Luis Pereira",
    ];
    let mut app = AppGraph::new("contacts-favorites", ui.pkg, "contacts_list");
    app.add_screen(ui.screen("contacts_list", "Contacts", "PeopleActivity", vec![
        ui.icon("open_drawer", "Open navigation drawer", b(0, 60, 140, 200)),
        ui.icon("search", "Search contacts", b(800, 60, 940, 200)),
        ui.icon("more", "More options", b(940, 60, W, 200)),
        ui.group("contact_list", RECYCLER, b(0, 200, W, 1700), ui.rows("contact_", &people, 220, 160)),
        ui.icon("fab", "Create Contact", b(880, 1700, 1040, 1860)),
    ]));
    let detail = |id: &str, name: &str, star: &str| {
        ui.screen(id, "Contact", "QuickContactActivity", vec![
            ui.up(),
            ui.icon("star", star, b(800, 60, 940, 200)),
            ui.icon("edit", "Edit contact", b(940, 60, W, 200)),
            ui.label("contact_name", name, b(40, 600, 1040, 720)),
            ui.icon("call", "Call", b(100, 800, 300, 1000)),
            ui.icon("message", "Send message", b(440, 800, 640, 1000)),
            ui.icon("video", "Video call", b(780, 800, 980, 1000)),
        ])
    };
    app.add_screen(detail("john_detail", "John Smith", "Add to favorites"));
    app.add_screen(detail("john_favorite", "John Smith", "Remove from favorites"));
    app.add_screen(detail("other_detail", "Ana Costa", "Add to favorites"));
    app.add_transition("contacts_list", "contact_7", ActionType::Click, "john_detail")
        .add_transition("contacts_list", "contact_0", ActionType::Click, "other_detail")
        .add_transition("contacts_list", "contact_1", ActionType::Click, "other_detail")
        .add_transition("john_detail", "navigate_up", ActionType::Click, "contacts_list")
        .add_transition("john_detail", "star", ActionType::Click, "john_favorite")
        .add_transition("john_favorite", "navigate_up", ActionType::Click, "contacts_list")
        .add_transition("john_favorite", "star", ActionType::Click, "john_detail")
        .add_transition("other_detail", "navigate_up", ActionType::Click, "contacts_list");
    let script = Trace::default()
        .screen("Your contacts list, sorted by first name.")
        .click("contact_7")
        .screen("John's contact card. The star to add to favorites is at the top right.")
        .click("star")
        .finish(
            "contacts-favorites",
            "tt2",
            "Add contact to favorites",
            "Open John Smith's contact card and add him to your favorites.",
        );
    (app, script)
}

fn youtube() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.google.android.youtube" };
    let nav = || {
        ui.nav(&[
            ("nav_home", "Home"),
            ("nav_shorts", "Shorts"),
            ("nav_subscriptions", "Subscriptions"),
            ("nav_library", "Library"),
        ])
    };
    let top = || {
        vec![
            ui.label("logo", "YouTube", b(0, 60, 400, 200)),
            ui.icon("cast", "Cast", b(660, 60, 800, 200)),
            ui.icon("notifications", "Notifications", b(800, 60, 940, 200)),
            ui.icon("search", "Search", b(940, 60, W, 200)),
        ]
    };
    let mut app = AppGraph::new("youtube", ui.pkg, "home");
    let mut home = top();
    home.push(ui.group(
        "feed",
        RECYCLER,
        b(0, 200, W, 1760),
        ui.rows("video_", &["Lisbon travel guide", "Ten minute workout", "Learn guitar chords", "Evening news"], 240, 360),
    ));
    home.push(nav());
    app.add_screen(ui.screen("home", "Home", "WatchWhileActivity", home));
    let mut library = top();
    library.push(ui.label("library_title", "Library", b(0, 220, W, 340)));
    library.push(ui.group(
        "recent",
        LINEAR,
        b(0, 340, W, 1050),
        ui.rows("recent_", &["Recent: Ten minute workout", "Recent: Lisbon travel guide"], 360, 340),
    ));
    library.push(ui.row("watch_later", "Watch later", b(0, 1170, W, 1290)));
    library.push(ui.row("history", "History", b(0, 1290, W, 1410)));
    library.push(ui.row("your_videos", "Your videos", b(0, 1410, W, 1530)));
    library.push(ui.row("downloads", "Downloads", b(0, 1530, W, 1650)));
    library.push(nav());
    app.add_screen(ui.screen("library", "Library", "WatchWhileActivity", library));
    let mut history = top();
    history.push(ui.label("history_title", "History", b(0, 220, W, 340)));
    history.push(ui.group(
        "history_list",
        RECYCLER,
        b(0, 360, W, 1740),
        ui.rows("watched_", &["How to make olive oil", "Street food in Porto", "Piano for beginners", "Evening news"], 380, 300),
    ));
    history.push(nav());
    app.add_screen(ui.screen("history", "History", "WatchWhileActivity", history));
    app.add_screen(ui.screen("video", "How to make olive oil", "WatchWhileActivity", vec![
        ui.icon("minimize", "Minimize", b(0, 60, 140, 200)),
        ui.label("video_title", "How to make olive oil", b(0, 700, W, 820)),
        ui.button("like", "Like", b(0, 860, 270, 980)),
        ui.button("dislike", "Dislike", b(270, 860, 540, 980)),
        ui.button("share", "Share", b(540, 860, 810, 980)),
        ui.button("save", "Save", b(810, 860, W, 980)),
        ui.label("channel", "Farm to Table", b(0, 1020, 700, 1140)),
        ui.button("subscribe", "Subscribe", b(700, 1020, W, 1140)),
    ]));
    app.add_screen(ui.screen("share_sheet", "Share", "WatchWhileActivity", vec![
        ui.label("share_title", "Share", b(0, 1100, W, 1220)),
        ui.button("copy_link", "Copy link", b(0, 1240, 270, 1440)),
        ui.button("whatsapp", "WhatsApp", b(270, 1240, 540, 1440)),
        ui.button("facebook", "Facebook", b(540, 1240, 810, 1440)),
        ui.button("email", "Email", b(810, 1240, W, 1440)),
        ui.button("close", "Close", b(0, 1500, W, 1620)),
    ]));
    app.add_screen(ui.screen("composer", "Create post", "ComposerActivity", vec![
        ui.up(),
        ui.label("composer_title", "Create post", b(160, 60, 700, 200)),
        ui.button("post", "Post", b(860, 60, W, 200)),
    ]));
    for screen in ["home", "library", "history"] {
        app.add_transition(screen, "nav_library", ActionType::Click, "library");
        if screen != "home" {
            app.add_transition(screen, "nav_home", ActionType::Click, "home");
        }
    }
    app.add_transition("library", "history", ActionType::Click, "history")
        .add_transition("history", "watched_0", ActionType::Click, "video")
        .add_transition("video", "minimize", ActionType::Click, "history")
        .add_transition("video", "share", ActionType::Click, "share_sheet")
        .add_transition("share_sheet", "close", ActionType::Click, "video")
        .add_transition("share_sheet", "facebook", ActionType::Click, "composer")
        .add_transition("composer", "navigate_up", ActionType::Click, "video");
    let script = Trace::default()
        .screen("The home feed. Tabs run along the bottom; Library is the last one, bottom right.")
        .click("nav_library")
        .screen("Your library. Recent videos on top, then a list with History near the bottom.")
        .click("history")
        .screen("Videos you watched, newest first.")
        .click("watched_0")
        .screen("The video player. Below the title there is a row with Like, Dislike, Share and Save.")
        .click("share")
        .screen("A share sheet with apps in a row.")
        .click("facebook")
        .finish(
            "youtube",
            "t1",
            "Share a video from History to Facebook",
            "Find the video How to make olive oil in your History and share it to Facebook.",
        );
    (app, script)
}

fn netflix() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.netflix.mediaclient" };
    let nav = || ui.nav(&[("nav_home", "Home"), ("nav_new", "New & Hot"), ("nav_mine", "My Netflix")]);
    let posters = |prefix: &str, top: i32| {
        // artwork tiles carry no label at all
        (0..3)
            .map(|i| ui.tappable(&format!("{prefix}{i}"), IMAGE_VIEW, b(i * 360, top, (i + 1) * 360, top + 480)))
            .collect::<Vec<_>>()
    };
    let mut app = AppGraph::new("netflix", ui.pkg, "home");
    app.add_screen(ui.screen("home", "Home", "HomeActivity", vec![
        ui.icon("profile", "Profile", b(0, 60, 140, 200)),
        ui.icon("search", "Search", b(800, 60, 940, 200)),
        ui.icon("notifications", "Notifications", b(940, 60, W, 200)),
        ui.button("tv_shows", "TV Shows", b(0, 220, 360, 320)),
        ui.button("movies", "Movies", b(360, 220, 720, 320)),
        ui.group("row_trending", LINEAR, b(0, 400, W, 880), posters("trending_", 400)),
        ui.group("row_continue", LINEAR, b(0, 960, W, 1440), posters("continue_", 960)),
        nav(),
    ]));
    app.add_screen(ui.screen("notifications", "Notifications", "NotificationsActivity", vec![
        ui.up(),
        ui.label("notifications_title", "Notifications", b(160, 60, 800, 200)),
        ui.row("notice_0", "New arrival: The Crown", b(0, 240, W, 440)),
        ui.row("notice_1", "Reminder: Squid Game season 2", b(0, 440, W, 640)),
        ui.row("notice_2", "Your download is ready", b(0, 640, W, 840)),
    ]));
    let search_top = || {
        vec![
            ui.up(),
            ui.field("search_box", "Search shows, movies, games", b(140, 60, W, 200)),
        ]
    };
    let mut search = search_top();
    search.push(ui.label("top_searches", "Top searches", b(0, 240, W, 340)));
    search.extend(ui.rows("suggestion_", &["Wednesday", "The Witcher", "Money Heist"], 360, 200));
    app.add_screen(ui.screen("search", "Search", "SearchActivity", search));
    let mut results = search_top();
    results.push(ui.label("results_title", "Shows and movies", b(0, 240, W, 340)));
    results.extend(ui.rows("result_", &["Stranger Things", "Dark", "The OA"], 360, 200));
    app.add_screen(ui.screen("search_results", "Search", "SearchActivity", results));
    let show = |id: &str, list_label: &str, download_label: &str| {
        ui.screen(id, "Stranger Things", "DetailsActivity", vec![
            ui.up(),
            ui.label("show_title", "Stranger Things", b(0, 620, W, 740)),
            ui.button("play", "Play", b(40, 760, 1040, 880)),
            ui.button("my_list", list_label, b(0, 900, 360, 1040)),
            ui.button("rate", "Rate", b(360, 900, 720, 1040)),
            ui.button("share", "Share", b(720, 900, W, 1040)),
            ui.group("episodes", LINEAR, b(0, 1100, W, 1700), vec![
                ui.row("episode_1", "Episode 1", b(0, 1100, 900, 1300)),
                ui.icon("download_1", download_label, b(900, 1100, W, 1300)),
                ui.row("episode_2", "Episode 2", b(0, 1300, 900, 1500)),
                ui.icon("download_2", "Download Episode 2", b(900, 1300, W, 1500)),
            ]),
        ])
    };
    app.add_screen(show("show", "My List", "Download Episode 1"));
    app.add_screen(show("show_listed", "My List", "Download Episode 1"));
    app.add_screen(show("show_downloading", "My List", "Downloading Episode 1"));
    app.add_transition("home", "notifications", ActionType::Click, "notifications")
        .add_transition("home", "search", ActionType::Click, "search")
        .add_transition("notifications", "navigate_up", ActionType::Click, "home")
        .add_transition("search", "navigate_up", ActionType::Click, "home")
        .add_transition("search", "search_box", ActionType::SetText, "search_results")
        .add_transition("search_results", "navigate_up", ActionType::Click, "home")
        .add_transition("search_results", "result_0", ActionType::Click, "show")
        .add_transition("show", "navigate_up", ActionType::Click, "search_results")
        .add_transition("show", "my_list", ActionType::Click, "show_listed")
        .add_transition("show_listed", "navigate_up", ActionType::Click, "search_results")
        .add_transition("show_listed", "download_1", ActionType::Click, "show_downloading")
        .add_transition("show_downloading", "navigate_up", ActionType::Click, "search_results")
        .add_edit_effect("search", "search_box", "search query")
        .add_edit_effect("search_results", "search_box", "search query");
    let script = Trace::default()
        .screen("Netflix home. Search and notifications are the two icons at the top right, notifications last.")
        .click("notifications")
        .screen("Your notifications, with Navigate up at the top left.")
        .click("navigate_up")
        .screen("Back on the home screen.")
        .click("search")
        .screen("Search. The search box is at the top, suggestions below.")
        .type_text("search_box", "Stranger")
        .click("result_0")
        .prompts(&["the name of the series, for example Stranger Things"])
        .screen("The series page. Play, then My List, Rate and Share, then the episodes with download buttons.")
        .click("my_list")
        .screen("The series page, now in your list.")
        .click("download_1")
        .finish(
            "netflix",
            "t2",
            "Add a series to My List and download an episode",
            "Check your notifications, find Stranger Things, add it to your list and download the first episode.",
        );
    (app, script)
}

fn uber_eats() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.ubercab.eats" };
    let nav = || ui.nav(&[("nav_home", "Início"), ("nav_browse", "Procurar"), ("nav_orders", "Pedidos"), ("nav_account", "Conta")]);
    let mut app = AppGraph::new("uber-eats", ui.pkg, "home");
    let mut home = vec![
        ui.label("deliver_now", "Entregar agora", b(0, 60, 700, 200)),
        ui.field("search_box", "Comida, mercearia, bebidas", b(0, 220, W, 340)),
    ];
    home.push(ui.group(
        "stores",
        RECYCLER,
        b(0, 360, W, 1740),
        ui.rows(
            "store_",
            &["McDonald's Alameda", "Burger King Saldanha", "McDonald's Saldanha", "Pizza Hut Chiado", "Sushi Box", "Padaria Portuguesa"],
            380,
            220,
        ),
    ));
    home.push(nav());
    app.add_screen(ui.screen("home", "Início", "MainActivity", home));
    let menu = |id: &str, name: &str, with_cart: bool| {
        let mut nodes = vec![
            ui.up(),
            ui.label("store_name", name, b(160, 60, W, 200)),
            ui.label("menu_title", "Menu", b(0, 240, W, 340)),
        ];
        nodes.extend(ui.rows("item_", &["Big Mac", "McChicken", "Happy Meal", "Batatas fritas", "McFlurry"], 360, 220));
        if with_cart {
            nodes.push(ui.button("view_cart", "Ver carrinho", b(40, 1600, 1040, 1740)));
        }
        ui.screen(id, name, "StoreActivity", nodes)
    };
    app.add_screen(menu("mcd_saldanha", "McDonald's Saldanha", false));
    app.add_screen(menu("mcd_saldanha_cart", "McDonald's Saldanha", true));
    app.add_screen(menu("mcd_alameda", "McDonald's Alameda", false));
    let item = |id: &str| {
        let sizes = ["Pequeno", "Médio", "Grande"];
        let drinks = ["Coca-Cola", "Sprite", "Água"];
        let mut nodes = vec![ui.up(), ui.label("item_name", "Big Mac", b(160, 60, W, 200))];
        nodes.push(ui.label("size_title", "Escolha o tamanho", b(0, 240, W, 340)));
        nodes.extend(sizes.iter().enumerate().map(|(i, s)| {
            let t = 360 + i as i32 * 140;
            ui.tappable(&format!("size_{i}"), RADIO, b(0, t, W, t + 140)).text(*s)
        }));
        nodes.push(ui.label("drink_title", "Escolha a bebida", b(0, 800, W, 900)));
        nodes.extend(drinks.iter().enumerate().map(|(i, s)| {
            let t = 920 + i as i32 * 140;
            ui.tappable(&format!("drink_{i}"), RADIO, b(0, t, W, t + 140)).text(*s)
        }));
        nodes.push(ui.button("add_to_order", "Adicionar ao pedido", b(40, 1600, 1040, 1740)));
        ui.screen(id, "Big Mac", "ItemActivity", nodes)
    };
    app.add_screen(item("big_mac"));
    app.add_screen(item("big_mac_medium"));
    app.add_screen(item("big_mac_medium_coke"));
    app.add_screen(ui.screen("cart", "Carrinho", "CartActivity", vec![
        ui.up(),
        ui.label("cart_title", "Carrinho", b(160, 60, W, 200)),
        ui.label("cart_line", "1 × Big Mac, Médio, Coca-Cola", b(0, 300, W, 420)),
        ui.button("add_items", "Adicionar itens", b(40, 500, 1040, 620)),
        ui.button("checkout", "Finalizar compra", b(40, 1600, 1040, 1740)),
    ]));
    app.add_screen(ui.screen("order_placed", "Pedido", "OrderActivity", vec![
        ui.label("placed", "Pedido confirmado", b(0, 800, W, 920)),
    ]));
    app.add_transition("home", "store_0", ActionType::Click, "mcd_alameda")
        .add_transition("home", "store_2", ActionType::Click, "mcd_saldanha")
        .add_transition("mcd_alameda", "navigate_up", ActionType::Click, "home")
        .add_transition("mcd_saldanha", "navigate_up", ActionType::Click, "home")
        .add_transition("mcd_saldanha", "item_0", ActionType::Click, "big_mac")
        .add_transition("mcd_saldanha_cart", "navigate_up", ActionType::Click, "home")
        .add_transition("mcd_saldanha_cart", "item_0", ActionType::Click, "big_mac")
        .add_transition("mcd_saldanha_cart", "view_cart", ActionType::Click, "cart");
    for screen in ["big_mac", "big_mac_medium", "big_mac_medium_coke"] {
        app.add_transition(screen, "navigate_up", ActionType::Click, "mcd_saldanha");
    }
    app.add_transition("big_mac", "size_1", ActionType::Click, "big_mac_medium")
        .add_transition("big_mac_medium", "drink_0", ActionType::Click, "big_mac_medium_coke")
        .add_transition("big_mac_medium_coke", "add_to_order", ActionType::Click, "mcd_saldanha_cart")
        .add_transition("cart", "navigate_up", ActionType::Click, "mcd_saldanha_cart")
        .add_transition("cart", "add_items", ActionType::Click, "mcd_saldanha_cart")
        .add_transition("cart", "checkout", ActionType::Click, "order_placed");
    let script = Trace::default()
        .screen("Restaurants near you, in a list. There are two McDonald's; we want the one in Saldanha.")
        .click("store_2")
        .screen("The McDonald's Saldanha menu. Big Mac is the first item.")
        .click("item_0")
        .screen("Options for the Big Mac. Sizes first, then drinks, and the add button at the bottom.")
        .click("size_1")
        .screen("Medium is selected. Now the drink.")
        .click("drink_0")
        .screen("Size and drink chosen. The add to order button is at the bottom.")
        .click("add_to_order")
        .screen("Back on the menu; a button to see the cart appeared at the bottom.")
        .click("view_cart")
        .screen("Your cart with the order summary and the checkout button at the bottom.")
        .click("checkout")
        .finish(
            "uber-eats",
            "t3",
            "Order a Big Mac from McDonald's Saldanha",
            "Order a medium Big Mac with Coca-Cola from McDonald's Saldanha and check out.",
        );
    (app, script)
}

fn google_translate() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.google.android.apps.translate" };
    let nav = || ui.nav(&[("nav_home", "Home"), ("nav_saved", "Saved"), ("nav_settings", "Settings")]);
    let home = |id: &str, target: &str| {
        ui.screen(id, "Translate", "TranslateActivity", vec![
            ui.button("source_lang", "English", b(0, 200, 460, 320)),
            ui.icon("swap", "Swap languages", b(460, 200, 620, 320)),
            ui.button("target_lang", target, b(620, 200, W, 320)),
            ui.field("input", "Enter text", b(0, 340, W, 900)),
            ui.icon("camera", "Camera", b(100, 1000, 300, 1200)),
            ui.icon("conversation", "Conversation", b(440, 1000, 640, 1200)),
            ui.icon("voice", "Voice", b(780, 1000, 980, 1200)),
            nav(),
        ])
    };
    let mut app = AppGraph::new("google-translate", ui.pkg, "home_pt");
    app.add_screen(home("home_pt", "Portuguese"));
    app.add_screen(home("home_es", "Spanish"));
    let languages = ["Portuguese", "French", "German", "Italian", "Spanish", "Japanese"];
    let mut picker = vec![ui.up(), ui.label("picker_title", "Translate to", b(160, 60, W, 200))];
    picker.extend(languages.iter().enumerate().map(|(i, l)| {
        let t = 240 + i as i32 * 160;
        ui.tappable(&format!("lang_{i}"), CHECKED_TEXT, b(0, t, W, t + 160)).text(*l)
    }));
    app.add_screen(ui.screen("picker", "Translate to", "LanguagePickerActivity", picker));
    let saved = |id: &str| {
        let mut nodes = vec![ui.label("saved_title", "Saved", b(0, 60, W, 200))];
        nodes.extend(ui.rows("phrase_", &["Good morning", "Where is the station?", "How much does it cost?", "Thank you"], 240, 200));
        nodes.push(nav());
        ui.screen(id, "Saved", "TranslateActivity", nodes)
    };
    app.add_screen(saved("saved_pt"));
    app.add_screen(saved("saved_es"));
    let phrase = |id: &str, language: &str, translation: &str| {
        ui.screen(id, "Translation", "TranslateActivity", vec![
            ui.up(),
            ui.label("pair", &format!("English to {language}"), b(160, 60, W, 200)),
            // the source card's button comes first in swipe order and sits on the left edge
            ui.group("source_card", LINEAR, b(0, 300, W, 700), vec![
                ui.icon("source_listen", "Listen", b(0, 560, 140, 700)),
                ui.label("source_text", "Where is the station?", b(160, 300, W, 540)),
            ]),
            ui.group("translation_card", LINEAR, b(0, 740, W, 1300), vec![
                ui.label("translation_text", translation, b(0, 740, W, 1000)),
                ui.group("translation_actions", LINEAR, b(0, 1020, W, 1300), vec![
                    ui.icon("copy", "Copy translation", b(0, 1040, 200, 1240)),
                    ui.icon("translation_listen", "Listen", b(470, 1070, 610, 1210)),
                    ui.icon("star", "Saved", b(880, 1040, W, 1240)),
                ]),
            ]),
        ])
    };
    app.add_screen(phrase("phrase_pt", "Portuguese", "Onde fica a estação?"));
    app.add_screen(phrase("phrase_es", "Spanish", "¿Dónde está la estación?"));
    for (home, saved, phrase) in [("home_pt", "saved_pt", "phrase_pt"), ("home_es", "saved_es", "phrase_es")] {
        app.add_transition(home, "target_lang", ActionType::Click, "picker")
            .add_transition(home, "nav_saved", ActionType::Click, saved)
            .add_transition(saved, "nav_home", ActionType::Click, home)
            .add_transition(saved, "phrase_1", ActionType::Click, phrase)
            .add_transition(phrase, "navigate_up", ActionType::Click, saved)
            .add_edit_effect(home, "input", "text to translate");
    }
    app.add_transition("picker", "navigate_up", ActionType::Click, "home_pt")
        .add_transition("picker", "lang_0", ActionType::Click, "home_pt")
        .add_transition("picker", "lang_4", ActionType::Click, "home_es");
    let script = Trace::default()
        .screen("A top part where you write what you want translated and a bottom part where you check the translation. The languages are at the very top, the target on the right.")
        .click("target_lang")
        .screen("A list of languages to translate to.")
        .click("lang_4")
        .screen("Back on the translator, now to Spanish. Saved is in the bottom bar.")
        .click("nav_saved")
        .screen("Your saved phrases.")
        .click("phrase_1")
        .screen("The phrase on top with its own listen button, the translation below with copy, listen and star buttons.")
        .click("translation_listen")
        .finish(
            "google-translate",
            "t4",
            "Listen to a saved phrase in Spanish",
            "Switch the translation from English to Portuguese to English to Spanish, open the saved phrase Where is the station? and play it in Spanish.",
        );
    (app, script)
}

fn onefootball() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "de.motain.iliga" };
    let nav = || ui.nav(&[("nav_home", "Home"), ("nav_matches", "Matches"), ("nav_following", "Following"), ("nav_watch", "Watch")]);
    let mut app = AppGraph::new("onefootball", ui.pkg, "home");
    let mut home = vec![ui.label("home_title", "OneFootball", b(0, 60, W, 200))];
    home.push(ui.group(
        "news",
        RECYCLER,
        b(0, 220, W, 1740),
        ui.rows("news_", &["Transfer news roundup", "Derby preview", "Goal of the week", "Injury update"], 240, 360),
    ));
    home.push(nav());
    app.add_screen(ui.screen("home", "Home", "MainActivity", home));
    let leagues_page = |id: &str, leagues: &[&str]| {
        let mut items = vec![ui.label("leagues_header", "Leagues", b(0, 320, W, 420))];
        items.extend(ui.rows("league_", leagues, 440, 200));
        ui.screen(id, "Following", "MainActivity", vec![
            ui.label("following_title", "Following", b(0, 60, W, 200)),
            ui.button("edit", "Edit", b(860, 200, W, 300)),
            ui.group("leagues_list", RECYCLER, b(0, 300, W, 1740), items)
                .capability(Capability::Scrollable),
            nav(),
        ])
    };
    app.add_screen(leagues_page("following", &["Premier League", "LaLiga", "Serie A", "Bundesliga", "Ligue 1", "Champions League"]));
    app.add_screen(leagues_page("following_more", &["Europa League", "Eredivisie", "Liga Portugal", "MLS"]));
    let tabs = |labels: &[&str]| {
        let w = W / labels.len() as i32;
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| ui.tab(&format!("tab_{i}"), l, b(i as i32 * w, 220, (i as i32 + 1) * w, 340)))
            .collect::<Vec<_>>()
    };
    let mut league = vec![ui.up(), ui.label("league_title", "Liga Portugal", b(160, 60, W, 200))];
    league.extend(tabs(&["Table", "Matches", "Teams", "News"]));
    app.add_screen(ui.screen("liga_portugal", "Liga Portugal", "CompetitionActivity", league.clone()));
    league.extend(ui.rows("team_", &["Benfica", "Porto", "Sporting CP", "Braga", "Vitória SC"], 380, 200));
    app.add_screen(ui.screen("liga_portugal_teams", "Liga Portugal", "CompetitionActivity", league));
    let mut club = vec![ui.up(), ui.label("club_title", "Benfica", b(160, 60, W, 200))];
    club.extend(tabs(&["Overview", "Matches", "Squad", "Transfers"]));
    app.add_screen(ui.screen("benfica", "Benfica", "TeamActivity", club.clone()));
    club.push(ui.group(
        "squad",
        LINEAR,
        b(0, 360, W, 1400),
        vec![
            ui.label("player_0", "Goalkeeper: Anatoliy Trubin", b(0, 380, W, 560)),
            ui.label("player_1", "Defender: António Silva", b(0, 580, W, 760)),
        ],
    ));
    app.add_screen(ui.screen("benfica_squad", "Benfica", "TeamActivity", club));
    for screen in ["home", "following", "following_more"] {
        app.add_transition(screen, "nav_following", ActionType::Click, "following");
        if screen != "home" {
            app.add_transition(screen, "nav_home", ActionType::Click, "home");
        }
    }
    app.add_transition("following", "leagues_list", ActionType::ScrollForward, "following_more")
        .add_transition("following_more", "leagues_list", ActionType::ScrollBackward, "following")
        .add_transition("following_more", "league_2", ActionType::Click, "liga_portugal")
        .add_transition("liga_portugal", "navigate_up", ActionType::Click, "following_more")
        .add_transition("liga_portugal", "tab_2", ActionType::Click, "liga_portugal_teams")
        .add_transition("liga_portugal_teams", "navigate_up", ActionType::Click, "following_more")
        .add_transition("liga_portugal_teams", "team_0", ActionType::Click, "benfica")
        .add_transition("benfica", "navigate_up", ActionType::Click, "liga_portugal_teams")
        .add_transition("benfica", "tab_2", ActionType::Click, "benfica_squad")
        .add_transition("benfica_squad", "navigate_up", ActionType::Click, "liga_portugal_teams");
    let script = Trace::default()
        .screen("The news feed. Following is the third tab in the bottom bar.")
        .click("nav_following")
        .screen("Competitions you follow, in a long list that starts with the Leagues heading.")
        .scroll("leagues_list")
        .click("league_2")
        .screen("The league page with tabs for table, matches, teams and news.")
        .click("tab_2")
        .screen("The teams of the league.")
        .click("team_0")
        .screen("The club page with tabs; Squad is the third.")
        .click("tab_2")
        .finish(
            "onefootball",
            "t5",
            "Check the Benfica squad",
            "Check the competitions you follow, open the teams of Liga Portugal and check the Benfica squad.",
        );
    (app, script)
}

fn outlook() -> (AppGraph, AuthoringScript) {
    let ui = Ui { pkg: "com.microsoft.office.outlook" };
    let mut app = AppGraph::new("outlook", ui.pkg, "inbox");
    let mut inbox = vec![
        ui.icon("drawer", "Open navigation drawer", b(0, 60, 140, 200)),
        ui.label("inbox_title", "Inbox", b(160, 60, 700, 200)),
        ui.icon("filter", "Filter", b(940, 60, W, 200)),
        ui.button("focused", "Focused", b(0, 220, 540, 320)),
        ui.button("other", "Other", b(540, 220, W, 320)),
    ];
    inbox.push(ui.group(
        "messages",
        RECYCLER,
        b(0, 340, W, 1740),
        ui.rows(
            "mail_",
            &["Team meeting at 10", "Your invoice is ready", "Weekend plans", "Flight confirmation", "Newsletter"],
            360,
            240,
        ),
    ));
    inbox.push(ui.icon("compose", "New mail", b(880, 1560, 1040, 1720)));
    inbox.push(ui.nav(&[("nav_mail", "Mail"), ("nav_search", "Search"), ("nav_calendar", "Calendar")]));
    app.add_screen(ui.screen("inbox", "Inbox", "CentralActivity", inbox));
    let mut drawer = vec![ui.label("account", "brenda@outlook.com", b(0, 60, 800, 200))];
    drawer.extend(ui.rows("folder_", &["Inbox", "Drafts", "Sent", "Archive", "Deleted"], 240, 180));
    drawer.push(ui.icon("help", "Help", b(200, 1760, 340, 1900)));
    drawer.push(ui.icon("settings", "Settings", b(40, 1760, 180, 1900)));
    app.add_screen(ui.screen("drawer", "Navigation drawer", "CentralActivity", drawer));
    let settings = |id: &str| {
        let mut nodes = vec![ui.up(), ui.label("settings_title", "Settings", b(160, 60, W, 200))];
        nodes.extend(ui.rows("setting_", &["Notifications", "Signatures", "Swipe options", "Focused Inbox"], 240, 180));
        // the switch has no label of its own; its row carries the text
        nodes.push(
            ui.node("dnd_row", LINEAR, b(0, 960, W, 1140))
                .text("Do not disturb")
                .child(ui.tappable("dnd_switch", SWITCH, b(900, 990, 1040, 1110))),
        );
        nodes.extend(ui.rows("more_setting_", &["Privacy", "About"], 1140, 180));
        ui.screen(id, "Settings", "SettingsActivity", nodes)
    };
    app.add_screen(settings("settings"));
    app.add_screen(settings("settings_dnd_on"));
    let mut dialog = vec![ui.label("dnd_title", "Do not disturb", b(80, 500, 1000, 620))];
    dialog.extend(
        ["For 1 hour", "Until this evening", "Until tomorrow", "Until I turn it off"].iter().enumerate().map(|(i, l)| {
            let t = 640 + i as i32 * 150;
            ui.tappable(&format!("dnd_option_{i}"), RADIO, b(80, t, 1000, t + 150)).text(*l)
        }),
    );
    dialog.push(ui.button("dnd_cancel", "Cancel", b(600, 1260, 1000, 1380)));
    app.add_screen(ui.screen("dnd_dialog", "Do not disturb", "SettingsActivity", dialog));
    app.add_transition("inbox", "drawer", ActionType::Click, "drawer")
        .add_transition("drawer", "folder_0", ActionType::Click, "inbox")
        .add_transition("drawer", "settings", ActionType::Click, "settings")
        .add_transition("settings", "navigate_up", ActionType::Click, "inbox")
        .add_transition("settings", "dnd_switch", ActionType::Click, "dnd_dialog")
        .add_transition("settings_dnd_on", "navigate_up", ActionType::Click, "inbox")
        .add_transition("settings_dnd_on", "dnd_switch", ActionType::Click, "settings")
        .add_transition("dnd_dialog", "dnd_cancel", ActionType::Click, "settings");
    for i in 0..4 {
        app.add_transition("dnd_dialog", format!("dnd_option_{i}").as_str(), ActionType::Click, "settings_dnd_on");
    }
    let script = Trace::default()
        .screen("Your inbox. The menu button that opens the navigation drawer is at the top left.")
        .click("drawer")
        .screen("The drawer lists your folders. The settings gear is at the bottom left.")
        .click("settings")
        .screen("Settings, one option per row. Do not disturb has a switch on the right.")
        .click("dnd_switch")
        .screen("A dialog asking how long to stay in do not disturb.")
        .click("dnd_option_3")
        .finish(
            "outlook",
            "t6",
            "Turn on Do not disturb",
            "Turn on the Do not disturb mode until you turn it off.",
        );
    (app, script)
}

/// Every app graph with the script that authors its task, in task order
/// (`tt1`, `tt2`, `t1` .. `t6`).
pub fn sources() -> Vec<(AppGraph, AuthoringScript)> {
    vec![contacts(), contacts_favorites(), youtube(), netflix(), uber_eats(), google_translate(), onefootball(), outlook()]
}

/// A sample request a user might send before anyone authored tt2.
pub fn sample_request() -> TaskRequest {
    TaskRequest {
        request_id: "req-favorite-john".into(),
        app_id: "contacts-favorites".into(),
        title: "Make John a favorite".into(),
        description: "I want John Smith at the top of my contacts, in the favorites.".into(),
    }
}

/// The built corpus: apps, scripts and the packages they author.
pub struct Built {
    pub apps: Vec<AppGraph>,
    pub scripts: Vec<AuthoringScript>,
    pub packages: Vec<TaskPackage>,
    /// Gestures of a guided compliant run for each task.
    pub play_scripts: Vec<(String, Vec<NavAction>)>,
}

/// Author every task and record a compliant playthrough of each.
pub fn build() -> anyhow::Result<Built> {
    let mut built = Built { apps: Vec::new(), scripts: Vec::new(), packages: Vec::new(), play_scripts: Vec::new() };
    for (app, script) in sources() {
        let violations = app.violations();
        anyhow::ensure!(violations.is_empty(), "{}: {violations:?}", app.app_id);
        let package = run_script(&app, None, &script)?;
        let app = Arc::new(app);
        let result = run_episode(&package, Arc::clone(&app), &mut Agent::new(Policy::Compliant), 200, Condition::Guided)?;
        anyhow::ensure!(result.success, "compliant run of {} did not finish", package.task_id);
        built.play_scripts.push((package.task_id.clone(), result.actions));
        built.apps.push(Arc::unwrap_or_clone(app));
        built.scripts.push(script);
        built.packages.push(package);
    }
    built.play_scripts.push(("t1-recovery".into(), youtube_recovery_script()));
    Ok(built)
}

/// A playthrough of t1 that strays from History back to the Library tab
/// once, then finishes.
pub fn youtube_recovery_script() -> Vec<NavAction> {
    let touch = |n: &str| NavAction::TouchExplore { node: NodeId::from(n) };
    let tap = NavAction::DoubleTapActivate;
    vec![
        touch("nav_library"),
        tap.clone(),
        touch("history"),
        tap.clone(),
        touch("nav_library"),
        tap.clone(),
        touch("history"),
        tap.clone(),
        touch("watched_0"),
        tap.clone(),
        touch("share"),
        tap.clone(),
        touch("facebook"),
        tap,
    ]
}

pub fn script_path(dir: &Path, name: &str) -> PathBuf {
    dir.join("scripts").join(format!("{name}.json"))
}

pub fn request_path(dir: &Path) -> PathBuf {
    dir.join("requests").join("favorite-john.json")
}

/// Write the corpus under `dir` and return the paths written.
pub fn write(dir: &Path, built: &Built) -> Result<Vec<PathBuf>, FormatError> {
    let mut written = Vec::new();
    let mut save = |path: PathBuf, text: String| -> Result<(), FormatError> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|source| FormatError::Io { path: parent.into(), source })?;
        }
        std::fs::write(&path, text).map_err(|source| FormatError::Io { path: path.clone(), source })?;
        written.push(path);
        Ok(())
    };
    for ((app, script), package) in built.apps.iter().zip(&built.scripts).zip(&built.packages) {
        save(app_path(dir, &app.app_id), formats::to_canonical(app))?;
        save(trace_path(dir, &package.task_id), formats::to_canonical(script))?;
        save(task_path(dir, &package.task_id), formats::to_canonical(package))?;
    }
    for (name, actions) in &built.play_scripts {
        save(script_path(dir, name), formats::to_canonical(actions))?;
    }
    save(request_path(dir), formats::to_canonical(&sample_request()))?;
    debug_assert_eq!(built.packages.len(), ALL_TASKS.len());
    Ok(written)
}
