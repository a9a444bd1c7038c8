package q;

import p.A;
import java.util.List;

public class B {
    private final A a = new A();
}
